#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "hyperlag/polynomial.hpp"
#include "hyperlag/weights.hpp"

namespace hyperlag {

// a.x = b for equalities, a.x >= b for inequalities.
struct LinearConstraint {
  std::vector<double> a;
  double b = 0;
  std::string label;

  double slack(std::span<const double> x) const {
    double s = -b;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * x[i];
    return s;
  }
};

// Maximize objective/denominator over a polytope. The box [lower, upper] must
// enclose the feasible region; it only steers seeding and the grid oracle.
struct PolyProgram {
  std::string name;
  std::vector<std::string> vars;
  Polynomial objective;
  std::optional<Polynomial> denominator;  // positive on the feasible region
  std::vector<LinearConstraint> equalities;
  std::vector<LinearConstraint> inequalities;
  std::vector<double> lower, upper;
  double paper_bound = std::numeric_limits<double>::infinity();
  std::string source;

  int k() const { return static_cast<int>(vars.size()); }

  double evaluate(std::span<const double> x) const {
    double v = objective(x);
    return denominator ? v / (*denominator)(x) : v;
  }

  void validate() const {
    const int n = k();
    if (n < 1 || n > kMaxProgramVariables)
      throw ProgramError(name + ": programs need 1.." + std::to_string(kMaxProgramVariables) + " variables");
    if (objective.vars() != n || (denominator && denominator->vars() != n))
      throw ProgramError(name + ": objective ring does not match the variable list");
    if (objective.degree() > 3 || (denominator && denominator->degree() > 3))
      throw ProgramError(name + ": degree above 3");
    if (static_cast<int>(lower.size()) != n || static_cast<int>(upper.size()) != n)
      throw ProgramError(name + ": search box has the wrong dimension");
    for (int i = 0; i < n; ++i)
      if (!(lower[i] <= upper[i])) throw ProgramError(name + ": empty search box");
    for (const auto* list : {&equalities, &inequalities})
      for (const auto& c : *list)
        if (static_cast<int>(c.a.size()) != n) throw ProgramError(name + ": constraint " + c.label + " has the wrong dimension");
  }
};

struct ProgramConfig {
  std::uint64_t seed = 0;
  int grid_per_dim = 11;         // Newton seeds per free dimension of a face
  int random_seeds = 20;         // extra seeds per face
  int max_grid_seeds = 20000;
  double feasibility_tol = 1e-9;
  double merge_distance = 1e-8;
  bool oracle = true;
  double oracle_budget = 2e6;    // grid points before zooming
  int oracle_mesh = 0;           // points per free dimension; 0 derives it from the budget
};

struct ProgramResult {
  std::string name;
  double value = -std::numeric_limits<double>::infinity();
  std::vector<double> argmax;
  std::vector<std::string> active_set;
  double kkt_residual = 0;
  bool vertex_attained = false;
  double oracle_value = std::numeric_limits<double>::quiet_NaN();
  std::vector<double> oracle_argmax;
  double paper_bound = std::numeric_limits<double>::infinity();
  bool satisfied = false;  // value <= paper_bound + 1e-6
  int faces = 0;            // consistent faces visited
  int stationary_points = 0;
  long newton_failures = 0;

  double oracle_gap() const { return value - oracle_value; }
};

inline constexpr double kBoundSlack = 1e-6;

namespace detail {

// Objective with gradient and Hessian, quotient rule applied when there is a
// denominator.
class Objective {
 public:
  explicit Objective(const PolyProgram& p) : k_(p.k()) {
    const Polynomial q = p.denominator ? *p.denominator : Polynomial::constant(k_, 1.0);
    build(p.objective, P_);
    build(q, Q_);
  }

  double value(std::span<const double> x) const { return eval(P_.f, x) / eval(Q_.f, x); }

  void derivatives(std::span<const double> x, double& f, Eigen::VectorXd& g, Eigen::MatrixXd& h) const {
    const double q = eval(Q_.f, x);
    f = eval(P_.f, x) / q;
    g.resize(k_);
    h.resize(k_, k_);
    std::vector<double> qi(static_cast<std::size_t>(k_));
    for (int i = 0; i < k_; ++i) {
      qi[i] = eval(Q_.d[i], x);
      g(i) = (eval(P_.d[i], x) - f * qi[i]) / q;
    }
    for (int i = 0; i < k_; ++i)
      for (int j = i; j < k_; ++j) {
        const std::size_t ij = static_cast<std::size_t>(i * k_ + j);
        h(i, j) = h(j, i) = (eval(P_.dd[ij], x) - f * eval(Q_.dd[ij], x) - g(i) * qi[j] - g(j) * qi[i]) / q;
      }
  }

 private:
  struct Flat {
    std::vector<double> c;
    std::vector<Polynomial::Exponents> e;
  };
  struct Parts {
    Flat f;
    std::vector<Flat> d, dd;
  };

  static Flat flatten(const Polynomial& p) {
    Flat out;
    for (const auto& [e, c] : p.terms()) {
      out.c.push_back(c);
      out.e.push_back(e);
    }
    return out;
  }

  void build(const Polynomial& p, Parts& parts) const {
    parts.f = flatten(p);
    parts.dd.resize(static_cast<std::size_t>(k_ * k_));
    for (int i = 0; i < k_; ++i) {
      Polynomial di = p.derivative(i);
      parts.d.push_back(flatten(di));
      for (int j = i; j < k_; ++j) parts.dd[static_cast<std::size_t>(i * k_ + j)] = flatten(di.derivative(j));
    }
  }

  double eval(const Flat& p, std::span<const double> x) const {
    double s = 0;
    for (std::size_t t = 0; t < p.c.size(); ++t) {
      double m = p.c[t];
      for (int i = 0; i < k_; ++i)
        for (int e = 0; e < p.e[t][static_cast<std::size_t>(i)]; ++e) m *= x[i];
      s += m;
    }
    return s;
  }

  int k_;
  Parts P_, Q_;
};

struct Face {
  Eigen::VectorXd x0;  // a point of the affine hull
  Eigen::MatrixXd N;   // orthonormal basis of the directions inside it
};

inline std::optional<Face> affine_face(const std::vector<const LinearConstraint*>& rows, int k) {
  Face face;
  if (rows.empty()) {
    face.x0 = Eigen::VectorXd::Zero(k);
    face.N = Eigen::MatrixXd::Identity(k, k);
    return face;
  }
  Eigen::MatrixXd M(static_cast<Eigen::Index>(rows.size()), k);
  Eigen::VectorXd rhs(static_cast<Eigen::Index>(rows.size()));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (int i = 0; i < k; ++i) M(static_cast<Eigen::Index>(r), i) = rows[r]->a[static_cast<std::size_t>(i)];
    rhs(static_cast<Eigen::Index>(r)) = rows[r]->b;
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(M, Eigen::ComputeFullU | Eigen::ComputeFullV);
  svd.setThreshold(1e-10);
  face.x0 = svd.solve(rhs);
  if ((M * face.x0 - rhs).lpNorm<Eigen::Infinity>() > 1e-10) return std::nullopt;
  const auto rank = svd.rank();
  face.N = svd.matrixV().rightCols(k - rank);
  return face;
}

}  // namespace detail

// Dense grid plus local zoom over the free variables left after Gaussian
// elimination of the equalities. Shares no code with the face solver.
struct OracleResult {
  double value = -std::numeric_limits<double>::infinity();
  std::vector<double> point;
};

inline OracleResult program_oracle(const PolyProgram& p, double budget = 2e6, int mesh = 0) {
  p.validate();
  const int k = p.k();
  // Reduced row echelon form of [A | b].
  std::vector<std::vector<double>> R;
  for (const auto& c : p.equalities) {
    auto row = c.a;
    row.push_back(c.b);
    R.push_back(std::move(row));
  }
  std::vector<int> pivots;
  std::size_t row = 0;
  for (int col = 0; col < k && row < R.size(); ++col) {
    std::size_t best = row;
    for (std::size_t r = row; r < R.size(); ++r)
      if (std::abs(R[r][col]) > std::abs(R[best][col])) best = r;
    if (std::abs(R[best][col]) < 1e-12) continue;
    std::swap(R[row], R[best]);
    const double piv = R[row][col];
    for (auto& v : R[row]) v /= piv;
    for (std::size_t r = 0; r < R.size(); ++r)
      if (r != row && R[r][col] != 0) {
        const double f = R[r][col];
        for (int c = 0; c <= k; ++c) R[r][c] -= f * R[row][c];
      }
    pivots.push_back(col);
    ++row;
  }
  for (std::size_t r = row; r < R.size(); ++r)
    if (std::abs(R[r][k]) > 1e-12) throw ProgramError(p.name + ": inconsistent equalities");
  std::vector<int> free;
  for (int i = 0; i < k; ++i)
    if (std::find(pivots.begin(), pivots.end(), i) == pivots.end()) free.push_back(i);
  const int d = static_cast<int>(free.size());

  auto complete = [&](const std::vector<double>& y, std::vector<double>& x) {
    for (int j = 0; j < d; ++j) x[free[j]] = y[j];
    for (std::size_t r = 0; r < pivots.size(); ++r) {
      double v = R[r][k];
      for (int j = 0; j < d; ++j) v -= R[r][free[j]] * y[j];
      x[pivots[r]] = v;
    }
  };
  auto feasible = [&](const std::vector<double>& x) {
    for (const auto& c : p.inequalities)
      if (c.slack(x) < -1e-12) return false;
    return true;
  };

  int m = mesh;
  if (m <= 0) m = d ? std::max(2, static_cast<int>(std::floor(std::pow(budget, 1.0 / d)))) : 1;
  std::vector<double> step(static_cast<std::size_t>(d));
  for (int j = 0; j < d; ++j) step[j] = (p.upper[free[j]] - p.lower[free[j]]) / (m - 1);

  constexpr std::size_t kKeep = 10;
  std::vector<std::pair<double, std::vector<double>>> top;  // ascending by value
  std::vector<double> y(static_cast<std::size_t>(d)), x(static_cast<std::size_t>(k));
  std::vector<int> idx(static_cast<std::size_t>(d), 0);
  for (;;) {
    for (int j = 0; j < d; ++j) y[j] = p.lower[free[j]] + idx[j] * step[j];
    complete(y, x);
    if (feasible(x)) {
      const double v = p.evaluate(x);
      if (top.size() < kKeep || v > top.front().first) {
        top.emplace_back(v, y);
        std::sort(top.begin(), top.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
        if (top.size() > kKeep) top.erase(top.begin());
      }
    }
    int j = 0;
    while (j < d && ++idx[j] == m) idx[j++] = 0;
    if (j == d) break;
  }

  OracleResult out;
  std::vector<int> offs(static_cast<std::size_t>(d));
  for (auto [v, centre] : top) {
    std::vector<double> h = step;
    double hmax = d ? *std::max_element(h.begin(), h.end()) : 0;
    for (int round = 0; hmax > 1e-13 && round < 4000; ++round) {
      bool moved = false;
      std::fill(offs.begin(), offs.end(), -2);
      std::vector<double> best = centre;
      for (;;) {
        for (int j = 0; j < d; ++j) y[j] = centre[j] + 0.5 * offs[j] * h[j];
        complete(y, x);
        if (feasible(x)) {
          const double w = p.evaluate(x);
          if (w > v) {
            v = w;
            best = y;
            moved = true;
          }
        }
        int j = 0;
        while (j < d && ++offs[j] == 3) offs[j++] = -2;
        if (j == d) break;
      }
      centre = best;
      if (!moved) {
        for (auto& s : h) s *= 0.5;
        hmax *= 0.5;
      }
    }
    if (v > out.value) {
      out.value = v;
      complete(centre, x);
      out.point = x;
    }
  }
  return out;
}

// Every face of the polytope (each subset of inequalities made tight) is
// searched for stationary points of the restricted objective by Newton's
// method from grid and random seeds. The maximum over feasible stationary
// points, face vertices included, is the global maximum.
inline ProgramResult solve_program(const PolyProgram& p, const ProgramConfig& cfg = {}) {
  p.validate();
  const int k = p.k();
  const int m = static_cast<int>(p.inequalities.size());
  if (m > 16) throw ProgramError(p.name + ": too many inequalities for face enumeration");
  detail::Objective obj(p);

  ProgramResult out;
  out.name = p.name;
  out.paper_bound = p.paper_bound;
  std::vector<std::vector<double>> found;

  auto feasible = [&](std::span<const double> x) {
    for (const auto& c : p.equalities)
      if (std::abs(c.slack(x)) > cfg.feasibility_tol) return false;
    for (const auto& c : p.inequalities)
      if (c.slack(x) < -cfg.feasibility_tol) return false;
    return true;
  };
  auto consider = [&](const Eigen::VectorXd& xv) {
    std::vector<double> x(xv.data(), xv.data() + k);
    if (!feasible(x)) return;
    for (const auto& f : found) {
      double dist = 0;
      for (int i = 0; i < k; ++i) dist = std::max(dist, std::abs(f[i] - x[i]));
      if (dist <= cfg.merge_distance) return;
    }
    found.push_back(x);
    const double v = obj.value(x);
    if (v > out.value) {
      out.value = v;
      out.argmax = x;
    }
  };

  for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
    std::vector<const LinearConstraint*> rows;
    for (const auto& c : p.equalities) rows.push_back(&c);
    for (int j = 0; j < m; ++j)
      if (mask >> j & 1u) rows.push_back(&p.inequalities[j]);
    auto face = detail::affine_face(rows, k);
    if (!face) continue;
    ++out.faces;
    const auto d = face->N.cols();
    if (d == 0) {
      consider(face->x0);
      continue;
    }

    // Seeds: grid over the box image in face coordinates, then random points.
    Eigen::VectorXd ylo(d), yhi(d);
    for (Eigen::Index j = 0; j < d; ++j) {
      double lo = 0, hi = 0;
      for (int i = 0; i < k; ++i) {
        const double a = face->N(i, j) * (p.lower[i] - face->x0(i));
        const double b = face->N(i, j) * (p.upper[i] - face->x0(i));
        lo += std::min(a, b);
        hi += std::max(a, b);
      }
      ylo(j) = lo;
      yhi(j) = hi;
    }
    int per = cfg.grid_per_dim;
    while (per > 2 && std::pow(per, static_cast<double>(d)) > cfg.max_grid_seeds) --per;
    std::vector<Eigen::VectorXd> seeds;
    std::vector<int> idx(static_cast<std::size_t>(d), 0);
    for (;;) {
      Eigen::VectorXd y(d);
      for (Eigen::Index j = 0; j < d; ++j) y(j) = ylo(j) + (yhi(j) - ylo(j)) * idx[j] / (per - 1);
      seeds.push_back(y);
      Eigen::Index j = 0;
      while (j < d && ++idx[j] == per) idx[j++] = 0;
      if (j == d) break;
    }
    Rng rng(derive_seed(cfg.seed, mask));
    for (int s = 0; s < cfg.random_seeds; ++s) {
      Eigen::VectorXd y(d);
      for (Eigen::Index j = 0; j < d; ++j) y(j) = ylo(j) + (yhi(j) - ylo(j)) * rng.uniform();
      seeds.push_back(y);
    }

    double f;
    Eigen::VectorXd g, x(k);
    Eigen::MatrixXd H;
    const double span = (yhi - ylo).lpNorm<Eigen::Infinity>() + 1.0;
    for (auto y : seeds) {
      bool converged = false;
      for (int it = 0; it < 60; ++it) {
        x = face->x0 + face->N * y;
        obj.derivatives(std::span<const double>(x.data(), static_cast<std::size_t>(k)), f, g, H);
        Eigen::VectorXd gy = face->N.transpose() * g;
        if (gy.lpNorm<Eigen::Infinity>() <= 1e-13) {
          converged = true;
          break;
        }
        Eigen::MatrixXd Hy = face->N.transpose() * H * face->N;
        Eigen::VectorXd step = Hy.completeOrthogonalDecomposition().solve(gy);
        if (!step.allFinite() || step.lpNorm<Eigen::Infinity>() == 0) break;
        y -= step;
        if ((y - 0.5 * (ylo + yhi)).lpNorm<Eigen::Infinity>() > 100 * span) break;
      }
      if (!converged) {
        x = face->x0 + face->N * y;
        obj.derivatives(std::span<const double>(x.data(), static_cast<std::size_t>(k)), f, g, H);
        converged = (face->N.transpose() * g).lpNorm<Eigen::Infinity>() <= 1e-10;
      }
      if (converged)
        consider(x);
      else
        ++out.newton_failures;
    }
  }
  out.stationary_points = static_cast<int>(found.size());
  if (out.argmax.empty()) throw ProgramError(p.name + ": no feasible point");

  // First-order check at the maximizer with least-squares multipliers.
  double f;
  Eigen::VectorXd g;
  Eigen::MatrixXd H;
  obj.derivatives(out.argmax, f, g, H);
  std::vector<const LinearConstraint*> act;
  for (const auto& c : p.equalities) act.push_back(&c);
  const std::size_t n_eq = act.size();
  auto rank_of = [&](const std::vector<const LinearConstraint*>& rows) -> Eigen::Index {
    if (rows.empty()) return 0;
    Eigen::MatrixXd M(k, static_cast<Eigen::Index>(rows.size()));
    for (std::size_t j = 0; j < rows.size(); ++j)
      for (int i = 0; i < k; ++i) M(i, static_cast<Eigen::Index>(j)) = rows[j]->a[static_cast<std::size_t>(i)];
    auto cod = M.completeOrthogonalDecomposition();
    cod.setThreshold(1e-10);
    return cod.rank();
  };
  const std::vector<const LinearConstraint*> eq_rows = act;
  const Eigen::Index eq_rank = rank_of(eq_rows);
  for (const auto& c : p.inequalities)
    if (std::abs(c.slack(out.argmax)) <= 1e-8) {
      out.active_set.push_back(c.label);
      // An inequality already implied by the equalities carries no multiplier.
      auto probe = eq_rows;
      probe.push_back(&c);
      if (rank_of(probe) > eq_rank) act.push_back(&c);
    }
  if (act.empty()) {
    out.kkt_residual = g.lpNorm<Eigen::Infinity>();
  } else {
    Eigen::MatrixXd G(k, static_cast<Eigen::Index>(act.size()));
    for (std::size_t j = 0; j < act.size(); ++j)
      for (int i = 0; i < k; ++i) G(i, static_cast<Eigen::Index>(j)) = act[j]->a[static_cast<std::size_t>(i)];
    auto cod = G.completeOrthogonalDecomposition();
    cod.setThreshold(1e-10);
    Eigen::VectorXd mult = cod.solve(g);
    double res = (g - G * mult).lpNorm<Eigen::Infinity>();
    // grad f = sum mu a_eq - sum nu a_act with nu >= 0.
    for (std::size_t j = n_eq; j < act.size(); ++j) res = std::max(res, mult(static_cast<Eigen::Index>(j)));
    out.kkt_residual = res;
    out.vertex_attained = cod.rank() == k;
  }
  out.satisfied = out.value <= p.paper_bound + kBoundSlack;
  if (cfg.oracle) {
    auto o = program_oracle(p, cfg.oracle_budget, cfg.oracle_mesh);
    out.oracle_value = o.value;
    out.oracle_argmax = std::move(o.point);
  }
  return out;
}

// Builders used by the battery and by callers assembling their own programs.
inline LinearConstraint sum_equals(int k, double total, std::string label = "sum") {
  return {std::vector<double>(static_cast<std::size_t>(k), 1.0), total, std::move(label)};
}
inline LinearConstraint coordinate_at_least(int k, int i, double v, std::string label) {
  std::vector<double> a(static_cast<std::size_t>(k), 0.0);
  a[static_cast<std::size_t>(i)] = 1.0;
  return {std::move(a), v, std::move(label)};
}
inline LinearConstraint coordinate_equals(int k, int i, double v, std::string label) {
  return coordinate_at_least(k, i, v, std::move(label));
}

}  // namespace hyperlag
