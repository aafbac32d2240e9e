#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "hyperlag/hypergraph.hpp"
#include "hyperlag/structure.hpp"
#include "hyperlag/weights.hpp"

namespace hyperlag {

inline constexpr double kSupportEps = 1e-10;
// Values closer than this are treated as equal (rounding noise of a sum of
// products near an optimum).
inline constexpr double kValueNoise = 1e-13;

struct SolverConfig {
  int restarts = 64;
  int max_iterations = 5000;
  double gradient_tolerance = 1e-11;
  std::uint64_t seed = 0;
  bool symmetrize = true;

  void validate() const {
    if (restarts <= 0 || max_iterations <= 0 || !(gradient_tolerance > 0))
      throw InvalidInput("solver restarts, iterations and tolerance must be positive");
  }
};

enum class Method { MultistartGradient, Grid, ClosedForm };

inline std::string to_string(Method m) {
  switch (m) {
    case Method::MultistartGradient: return "multistart-gradient";
    case Method::Grid: return "grid";
    case Method::ClosedForm: return "closed-form";
  }
  return "?";
}

struct LagrangianResult {
  double value = 0;
  WeightVector weights;
  double kkt_residual = 0;
  Method method = Method::MultistartGradient;
  int restarts_used = 0;
  std::uint64_t seed = 0;
  long iterations = 0;
};

namespace detail {

// Edges as flat 0-based vertex indices.
struct Flat {
  int n = 0, r = 0;
  std::vector<int> v;
  std::size_t m() const { return r ? v.size() / static_cast<std::size_t>(r) : 0; }

  explicit Flat(const Hypergraph& g) : n(g.order()), r(g.uniformity()) {
    v.reserve(g.size() * static_cast<std::size_t>(r));
    for (const auto& e : g.edges())
      for (Vertex u : e) v.push_back(u - 1);
  }

  double eval(std::span<const double> x) const {
    double s = 0;
    const int* p = v.data();
    for (std::size_t k = 0; k < m(); ++k, p += r) {
      double prod = 1;
      for (int t = 0; t < r; ++t) prod *= x[p[t]];
      s += prod;
    }
    return s;
  }

  void grad(std::span<const double> x, std::vector<double>& g) const {
    g.assign(static_cast<std::size_t>(n), 0.0);
    const int* p = v.data();
    for (std::size_t k = 0; k < m(); ++k, p += r) {
      for (int t = 0; t < r; ++t) {
        double prod = 1;
        for (int s = 0; s < r; ++s)
          if (s != t) prod *= x[p[s]];
        g[p[t]] += prod;
      }
    }
  }

  Eigen::MatrixXd hess(std::span<const double> x) const {
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);
    const int* p = v.data();
    for (std::size_t k = 0; k < m(); ++k, p += r)
      for (int a = 0; a < r; ++a)
        for (int b = a + 1; b < r; ++b) {
          double prod = 1;
          for (int s = 0; s < r; ++s)
            if (s != a && s != b) prod *= x[p[s]];
          h(p[a], p[b]) += prod;
          h(p[b], p[a]) += prod;
        }
    return h;
  }
};

inline void check_dimension(const Hypergraph& g, std::size_t d) {
  if (d != static_cast<std::size_t>(g.order()))
    throw InvalidInput("weight vector has dimension " + std::to_string(d) + " but the graph has " +
                       std::to_string(g.order()) + " vertices");
}

// Euclidean projection onto the simplex (sort-based).
inline void project_simplex(std::vector<double>& y) {
  const std::size_t n = y.size();
  std::vector<double> u(y);
  std::sort(u.begin(), u.end(), std::greater<>());
  double css = 0, theta = 0;
  for (std::size_t k = 0; k < n; ++k) {
    css += u[k];
    double t = (css - 1.0) / static_cast<double>(k + 1);
    if (u[k] - t > 0) theta = t;
  }
  double sum = 0;
  for (auto& v : y) sum += (v = std::max(v - theta, 0.0));
  for (auto& v : y) v /= sum;
}

}  // namespace detail

inline double evaluate(const Hypergraph& g, std::span<const double> x) {
  detail::check_dimension(g, x.size());
  return detail::Flat(g).eval(x);
}

inline std::vector<double> gradient(const Hypergraph& g, std::span<const double> x) {
  detail::check_dimension(g, x.size());
  std::vector<double> out;
  detail::Flat(g).grad(x, out);
  return out;
}

namespace detail {

inline double kkt_from(std::span<const double> x, const std::vector<double>& grad, double r_lambda, double support_eps) {
  double res = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] > support_eps) res = std::max(res, std::abs(grad[i] - r_lambda));
    else res = std::max(res, grad[i] - r_lambda);
  }
  return res;
}

}  // namespace detail

// Max deviation from the simplex KKT conditions: partials equal r*lambda on
// the support and do not exceed it off the support.
inline double kkt_residual(const Hypergraph& g, std::span<const double> x, double support_eps = kSupportEps) {
  detail::check_dimension(g, x.size());
  detail::Flat f(g);
  std::vector<double> grad;
  f.grad(x, grad);
  return detail::kkt_from(x, grad, g.uniformity() * f.eval(x), support_eps);
}

// Vertex pairs whose link differences vanish. classes are the orbits of the
// transpositions (i j) with L(i\j) = L(j\i) = empty; dominated holds (i, j)
// with L(j\i) empty but L(i\j) nonempty, 1-based.
struct SymmetryStructure {
  std::vector<VertexSet> classes;
  std::vector<std::pair<Vertex, Vertex>> dominated;
};

inline SymmetryStructure symmetry_structure(const Hypergraph& g) {
  const int n = g.order();
  std::vector<std::vector<Edge>> link(static_cast<std::size_t>(n) + 1);
  for (const auto& e : g.edges())
    for (Vertex v : e) {
      Edge rest;
      for (Vertex u : e)
        if (u != v) rest.push_back(u);
      link[v].push_back(std::move(rest));
    }
  for (auto& l : link) std::sort(l.begin(), l.end());
  // empty_diff(i, j): L(j\i) is empty.
  auto empty_diff = [&](Vertex i, Vertex j) {
    Edge swapped;
    for (const auto& e : link[j]) {
      if (std::binary_search(e.begin(), e.end(), i)) continue;
      swapped = e;
      if (!std::binary_search(link[i].begin(), link[i].end(), swapped)) return false;
    }
    return true;
  };
  SymmetryStructure out;
  std::vector<int> cls(static_cast<std::size_t>(n) + 1, -1);
  for (Vertex i = 1; i <= n; ++i) {
    for (Vertex j = i + 1; j <= n; ++j) {
      bool ji = empty_diff(i, j), ij = empty_diff(j, i);
      if (ji && ij) {
        if (cls[i] < 0) {
          cls[i] = static_cast<int>(out.classes.size());
          out.classes.push_back({i});
        }
        if (cls[j] < 0) {
          cls[j] = cls[i];
          out.classes[cls[i]].push_back(j);
        }
      } else if (ji) {
        out.dominated.emplace_back(i, j);
      } else if (ij) {
        out.dominated.emplace_back(j, i);
      }
    }
  }
  return out;
}

namespace detail {

class Ascent {
 public:
  Ascent(const Hypergraph& g, const SolverConfig& cfg) : f_(g), cfg_(cfg) {
    if (cfg.symmetrize) sym_ = symmetry_structure(g);
  }

  // Full local solve from x: projected gradient, Newton polish on the
  // support, repeated while some zero weight still has an improving partial.
  double solve(std::vector<double>& x, long& iters) {
    double val = f_.eval(x);
    for (int round = 0; round < 8; ++round) {
      val = ascend(x, iters);
      val = polish(x);
      if (off_support_violation(x, val) <= 1e-13) break;
    }
    if (cfg_.symmetrize) val = symmetrize(x, val, iters);
    return val;
  }

  double value(const std::vector<double>& x) const { return f_.eval(x); }

 private:
  double ascend(std::vector<double>& x, long& iters) {
    double fx = f_.eval(x);
    std::vector<double> g, y(x.size());
    double t = 1.0;
    for (int it = 0; it < cfg_.max_iterations; ++it) {
      ++iters;
      f_.grad(x, g);
      t = std::min(t * 2.0, 1e3);
      bool moved = false;
      double fy = fx;
      for (int h = 0; h <= 60; ++h, t *= 0.5) {
        for (std::size_t i = 0; i < x.size(); ++i) y[i] = x[i] + t * g[i];
        project_simplex(y);
        fy = f_.eval(y);
        if (fy > fx) {
          moved = true;
          break;
        }
      }
      if (!moved) break;
      double dx = 0;
      for (std::size_t i = 0; i < x.size(); ++i) dx = std::max(dx, std::abs(y[i] - x[i]));
      x.swap(y);
      fx = fy;
      if (dx < cfg_.gradient_tolerance) break;
    }
    return fx;
  }

  double off_support_violation(const std::vector<double>& x, double val) const {
    std::vector<double> g;
    f_.grad(x, g);
    double worst = 0;
    for (std::size_t i = 0; i < x.size(); ++i)
      if (x[i] <= kSupportEps) worst = std::max(worst, g[i] - f_.r * val);
    return worst;
  }

  // Newton on grad_S = mu, sum x_S = 1. Coordinates driven negative leave the
  // support and the solve restarts; a result worse than the input is dropped.
  double polish(std::vector<double>& x) {
    const double start = f_.eval(x);
    std::vector<double> base(x);
    for (std::size_t i = 0; i < base.size(); ++i)
      if (base[i] <= kSupportEps) base[i] = 0;
    for (int attempt = 0; attempt < f_.n; ++attempt) {
      std::vector<int> s;
      for (int i = 0; i < f_.n; ++i)
        if (base[i] > 0) s.push_back(i);
      if (s.empty()) break;
      const int k = static_cast<int>(s.size());
      std::vector<double> z(base);
      double total = std::accumulate(z.begin(), z.end(), 0.0);
      for (auto& v : z) v /= total;
      double mu = f_.r * f_.eval(z);
      std::vector<double> g;
      bool failed = false;
      std::vector<int> negative;
      for (int it = 0; it < 60; ++it) {
        f_.grad(z, g);
        Eigen::MatrixXd h = f_.hess(z);
        Eigen::MatrixXd j = Eigen::MatrixXd::Zero(k + 1, k + 1);
        Eigen::VectorXd rhs(k + 1);
        double sum = 0, res = 0;
        for (int a = 0; a < k; ++a) {
          for (int b = 0; b < k; ++b) j(a, b) = h(s[a], s[b]);
          j(a, k) = -1;
          j(k, a) = 1;
          rhs(a) = -(g[s[a]] - mu);
          sum += z[s[a]];
          res = std::max(res, std::abs(rhs(a)));
        }
        rhs(k) = -(sum - 1.0);
        res = std::max(res, std::abs(rhs(k)));
        if (res < 1e-16) break;
        Eigen::VectorXd d = j.completeOrthogonalDecomposition().solve(rhs);
        if (!d.allFinite()) {
          failed = true;
          break;
        }
        double step = 0;
        for (int a = 0; a < k; ++a) {
          z[s[a]] += d(a);
          step = std::max(step, std::abs(d(a)));
        }
        mu += d(k);
        for (int a = 0; a < k; ++a)
          if (z[s[a]] <= 0) negative.push_back(s[a]);
        if (!negative.empty()) {
          failed = true;
          break;
        }
        if (step < 1e-16) break;
      }
      if (failed) {
        if (negative.empty()) break;
        for (int i : negative) base[i] = 0;
        continue;
      }
      double total2 = std::accumulate(z.begin(), z.end(), 0.0);
      for (auto& v : z) v /= total2;
      double val = f_.eval(z);
      if (val >= start - kValueNoise * std::max(1.0, std::abs(start))) {
        x = z;
        return val;
      }
      break;
    }
    return start;
  }

  double symmetrize(std::vector<double>& x, double val, long& iters) {
    for (int round = 0; round < 10; ++round) {
      std::vector<double> y(x);
      for (const auto& c : sym_.classes) {
        double avg = 0;
        for (Vertex v : c) avg += y[v - 1];
        avg /= static_cast<double>(c.size());
        for (Vertex v : c) y[v - 1] = avg;
      }
      for (const auto& [i, j] : sym_.dominated)
        if (y[i - 1] < y[j - 1]) std::swap(y[i - 1], y[j - 1]);
      double change = 0;
      for (std::size_t k = 0; k < x.size(); ++k) change = std::max(change, std::abs(y[k] - x[k]));
      double fy = f_.eval(y);
      if (fy < val - kValueNoise) break;
      x = y;
      val = fy;
      if (change <= 1e-15) break;
      for (int inner = 0; inner < 4; ++inner) {
        val = ascend(x, iters);
        val = polish(x);
        if (off_support_violation(x, val) <= 1e-13) break;
      }
    }
    return val;
  }

  Flat f_;
  SolverConfig cfg_;
  SymmetryStructure sym_;
};

inline std::vector<double> start_point(int n, int r, int k, Rng& rng) {
  std::vector<double> x(static_cast<std::size_t>(n), 0.0);
  if (k == 0) {
    std::fill(x.begin(), x.end(), 1.0 / n);
  } else if (k % 2 == 1) {
    int lo = std::min(r, n);
    int size = lo + static_cast<int>(rng.below(static_cast<std::size_t>(n - lo + 1)));
    std::vector<int> idx(static_cast<std::size_t>(n));
    std::iota(idx.begin(), idx.end(), 0);
    for (int i = 0; i < size; ++i) std::swap(idx[i], idx[i + static_cast<int>(rng.below(static_cast<std::size_t>(n - i)))]);
    for (int i = 0; i < size; ++i) x[idx[i]] = 1.0 / size;
  } else {
    double sum = 0;
    for (auto& v : x) sum += (v = rng.exponential());
    for (auto& v : x) v /= sum;
  }
  return x;
}

}  // namespace detail

// Best local maximum over restarts. Components with edges are solved
// separately (no edge crosses them) and the best one carries all weight.
inline LagrangianResult maximize(const Hypergraph& g, const SolverConfig& cfg = {}) {
  cfg.validate();
  LagrangianResult out;
  out.restarts_used = cfg.restarts;
  out.seed = cfg.seed;
  const int n = g.order();
  if (g.size() == 0) {
    out.weights = WeightVector::uniform(n);
    out.method = Method::ClosedForm;
    return out;
  }
  std::vector<double> best_x;
  double best = -1;
  for (const auto& comp : edge_components(g)) {
    Hypergraph h = induced(g, comp);
    detail::Ascent ascent(h, cfg);
    double comp_best = -1;
    std::vector<double> comp_x;
    for (int k = 0; k < cfg.restarts; ++k) {
      Rng rng(derive_seed(cfg.seed, static_cast<std::uint64_t>(k)));
      auto x = detail::start_point(h.order(), h.uniformity(), k, rng);
      double v = ascent.solve(x, out.iterations);
      if (v > comp_best + kValueNoise) {
        comp_best = v;
        comp_x = x;
      }
    }
    if (comp_best > best) {
      best = comp_best;
      best_x.assign(static_cast<std::size_t>(n), 0.0);
      for (std::size_t i = 0; i < comp.size(); ++i) best_x[comp[i] - 1] = comp_x[i];
    }
  }
  out.weights = WeightVector(best_x);
  out.value = evaluate(g, best_x);
  out.kkt_residual = kkt_residual(g, best_x);
  return out;
}

// Max of lambda over simplex points with all coordinates multiples of 1/mesh.
inline constexpr int kGridMaxOrder = 8;
inline constexpr int kGridMaxMesh = 60;
inline constexpr double kGridMaxPoints = 5e7;

struct GridResult {
  double value = 0;
  std::vector<double> point;
};

inline GridResult grid_search(const Hypergraph& g, int mesh) {
  if (mesh < 1) throw InvalidInput("grid mesh must be positive");
  VertexSet active;
  {
    auto deg = g.degrees();
    for (Vertex v = 1; v <= g.order(); ++v)
      if (deg[v] > 0) active.push_back(v);
  }
  const int n = static_cast<int>(active.size());
  if (n > kGridMaxOrder || mesh > kGridMaxMesh)
    throw CapacityError("grid oracle supports at most " + std::to_string(kGridMaxOrder) + " non-isolated vertices and mesh " +
                        std::to_string(kGridMaxMesh));
  if (n > 0 && static_cast<double>(binomial(mesh + n - 1, n - 1)) > kGridMaxPoints)
    throw CapacityError("grid oracle would visit more than 5e7 points");
  GridResult out;
  out.point.assign(static_cast<std::size_t>(g.order()), 0.0);
  if (n == 0) {
    if (g.order()) out.point[0] = 1;
    return out;
  }
  detail::Flat f(induced(g, active));
  std::vector<double> c(static_cast<std::size_t>(n), 0.0);
  const double scale = std::pow(static_cast<double>(mesh), f.r);
  double best = -1;
  std::vector<double> best_c;
  // Integer compositions of mesh into n parts; products are exact integers.
  std::function<void(int, int)> rec = [&](int i, int left) {
    if (i == n - 1) {
      c[i] = left;
      double v = f.eval(c);
      if (v > best) {
        best = v;
        best_c = c;
      }
      return;
    }
    for (int a = left; a >= 0; --a) {
      c[i] = a;
      rec(i + 1, left - a);
    }
  };
  rec(0, mesh);
  out.value = best / scale;
  for (int i = 0; i < n; ++i) out.point[active[i] - 1] = best_c[i] / mesh;
  return out;
}

inline double grid_oracle(const Hypergraph& g, int mesh) { return grid_search(g, mesh).value; }

// Drops single edges while lambda stays within tolerance of the original,
// then discards isolated vertices.
inline Hypergraph densify(const Hypergraph& g, const SolverConfig& cfg = {}) {
  const double target = maximize(g, cfg).value;
  Hypergraph cur = g;
  bool changed = true;
  while (changed) {
    changed = false;
    auto res = maximize(cur, cfg);
    // Edges carrying little optimal weight are the likeliest to be removable.
    std::vector<std::pair<double, std::size_t>> order;
    for (std::size_t k = 0; k < cur.size(); ++k) {
      double prod = 1;
      for (Vertex v : cur.edges()[k]) prod *= res.weights.of(v);
      order.emplace_back(prod, k);
    }
    std::stable_sort(order.begin(), order.end());
    for (const auto& [prod, k] : order) {
      Hypergraph cand = remove_edge(cur, cur.edges()[k]);
      if (maximize(cand, cfg).value >= target - cfg.gradient_tolerance) {
        cur = std::move(cand);
        changed = true;
        break;
      }
    }
  }
  auto deg = cur.degrees();
  VertexSet keep;
  for (Vertex v = 1; v <= cur.order(); ++v)
    if (deg[v] > 0) keep.push_back(v);
  return induced(cur, keep);
}

struct MotzkinStrausReport {
  double lambda = 0;
  int omega = 0;
  double discrepancy = 0;
};

inline MotzkinStrausReport motzkin_straus_check(const Hypergraph& g, const SolverConfig& cfg = {}) {
  if (g.uniformity() != 2) throw InvalidInput("Motzkin-Straus check needs a 2-graph");
  MotzkinStrausReport out;
  out.lambda = maximize(g, cfg).value;
  out.omega = clique_number(g);
  out.discrepancy = std::abs(out.lambda - 0.5 * (1.0 - 1.0 / out.omega));
  return out;
}

}  // namespace hyperlag
