#pragma once

#include <algorithm>
#include <numeric>
#include <queue>
#include <vector>

#include "hyperlag/interval.hpp"
#include "hyperlag/lagrangian.hpp"

namespace hyperlag {

inline constexpr int kCertifyMaxOrder = 9;

struct CertifiedBound {
  double bound = 0;         // rigorous upper bound on lambda(G)
  long boxes_explored = 0;  // boxes whose bound was evaluated
  int max_depth = 0;
  double tolerance = 0;
  double target = 0;
  bool success = false;     // bound <= target + tolerance
  bool exhausted = false;   // box budget ran out before the queue emptied
};

namespace detail {

struct Box {
  std::vector<double> lo, hi;
  double ub = 0;
  int depth = 0;
};

class Certifier {
 public:
  Certifier(const Hypergraph& g, long budget) : f_(g), n_(g.order()), budget_(budget) {
    for (const auto& c : symmetry_structure(g).classes)
      if (c.size() > 1) chains_.push_back(c);
  }

  CertifiedBound run(double target, double tolerance) {
    CertifiedBound out;
    out.tolerance = tolerance;
    out.target = target;
    Box root{std::vector<double>(static_cast<std::size_t>(n_), 0.0), std::vector<double>(static_cast<std::size_t>(n_), 1.0), 0, 0};
    if (!tighten(root)) return out;
    root.ub = upper_bound(root);
    ++out.boxes_explored;
    auto cmp = [](const Box& a, const Box& b) { return a.ub < b.ub; };
    std::priority_queue<Box, std::vector<Box>, decltype(cmp)> queue(cmp);
    double threshold = std::max(target, incumbent(root)) + tolerance;
    double settled = -std::numeric_limits<double>::infinity();
    queue.push(std::move(root));
    while (!queue.empty()) {
      if (out.boxes_explored >= budget_) {
        out.exhausted = true;
        settled = std::max(settled, queue.top().ub);
        break;
      }
      Box box = queue.top();
      queue.pop();
      out.max_depth = std::max(out.max_depth, box.depth);
      if (box.ub <= threshold) {
        settled = std::max(settled, box.ub);
        continue;
      }
      int axis = 0;
      for (int i = 1; i < n_; ++i)
        if (box.hi[i] - box.lo[i] > box.hi[axis] - box.lo[axis]) axis = i;
      const double mid = 0.5 * (box.lo[axis] + box.hi[axis]);
      if (box.hi[axis] - box.lo[axis] < 1e-12 || mid <= box.lo[axis] || mid >= box.hi[axis]) {
        settled = std::max(settled, box.ub);  // cannot split further
        continue;
      }
      for (int side = 0; side < 2; ++side) {
        Box child{box.lo, box.hi, 0, box.depth + 1};
        (side ? child.lo[axis] : child.hi[axis]) = mid;
        if (!tighten(child)) continue;
        child.ub = upper_bound(child);
        ++out.boxes_explored;
        threshold = std::max(threshold, incumbent(child) + tolerance);
        if (child.ub <= threshold) {
          settled = std::max(settled, child.ub);
          out.max_depth = std::max(out.max_depth, child.depth);
        } else {
          queue.push(std::move(child));
        }
      }
    }
    out.bound = settled;
    out.success = !out.exhausted && settled <= target + tolerance;
    return out;
  }

 private:
  // Shrinks the box against sum x = 1 and the sorted order inside each class
  // of interchangeable vertices. Returns false when nothing feasible is left.
  bool tighten(Box& b) const {
    for (int pass = 0; pass < 3; ++pass) {
      for (const auto& c : chains_)
        for (std::size_t k = 0; k + 1 < c.size(); ++k) {
          int a = c[k] - 1, z = c[k + 1] - 1;  // x_a >= x_z
          b.hi[z] = std::min(b.hi[z], b.hi[a]);
          b.lo[a] = std::max(b.lo[a], b.lo[z]);
        }
      for (const auto& c : chains_)
        for (std::size_t k = 1; k < c.size(); ++k)
          b.hi[c[k] - 1] = std::min(b.hi[c[k] - 1], Interval::up(1.0 / static_cast<double>(k + 1)));
      Interval slo(0.0), shi(0.0);
      for (int i = 0; i < n_; ++i) {
        if (b.lo[i] > b.hi[i]) return false;
        slo += Interval(b.lo[i]);
        shi += Interval(b.hi[i]);
      }
      if (slo.lo > 1.0 || shi.hi < 1.0) return false;
      for (int i = 0; i < n_; ++i) {
        // Other coordinates sum to at least slo - lo_i and at most shi - hi_i.
        Interval rest_lo = slo - Interval(b.lo[i]);
        Interval rest_hi = shi - Interval(b.hi[i]);
        double new_hi = (Interval(1.0) - Interval(std::max(rest_lo.lo, 0.0))).hi;
        double new_lo = (Interval(1.0) - Interval(rest_hi.hi)).lo;
        b.hi[i] = std::min(b.hi[i], new_hi);
        b.lo[i] = std::max(b.lo[i], new_lo);
        if (b.lo[i] > b.hi[i]) return false;
      }
    }
    return true;
  }

  // Exact expansion of the multilinear form around the box centre c:
  // lambda(c+d) = lambda(c) + grad(c).d + sum over edge subsets of size >= 2.
  // The linear part uses sum d = 1 - sum c through a free multiplier mu.
  double upper_bound(const Box& b) const {
    const int r = f_.r;
    std::vector<double> c(static_cast<std::size_t>(n_));
    std::vector<Interval> d(static_cast<std::size_t>(n_));
    Interval csum(0.0);
    for (int i = 0; i < n_; ++i) {
      c[i] = 0.5 * (b.lo[i] + b.hi[i]);
      d[i] = Interval(b.lo[i]) - Interval(c[i]);
      d[i] = Interval(d[i].lo, (Interval(b.hi[i]) - Interval(c[i])).hi);
      csum += Interval(c[i]);
    }
    Interval s = Interval(1.0) - csum;
    Interval base(0.0), higher(0.0);
    std::vector<Interval> grad(static_cast<std::size_t>(n_), Interval(0.0));
    const int* p = f_.v.data();
    const int subsets = 1 << r;
    for (std::size_t k = 0; k < f_.m(); ++k, p += r) {
      for (int mask = 0; mask < subsets; ++mask) {
        const int bits = __builtin_popcount(static_cast<unsigned>(mask));
        Interval term(1.0);
        for (int t = 0; t < r; ++t) term *= (mask >> t & 1) ? d[p[t]] : Interval(c[p[t]]);
        if (bits == 0) {
          base += term;
        } else if (bits == 1) {
          int t = __builtin_ctz(static_cast<unsigned>(mask));
          Interval coef(1.0);
          for (int u = 0; u < r; ++u)
            if (u != t) coef *= Interval(c[p[u]]);
          grad[p[t]] += coef;
        } else {
          higher += term;
        }
      }
    }
    double mu = multiplier(grad, b);
    Interval lin = Interval(mu) * s;
    for (int i = 0; i < n_; ++i) lin += (grad[i] - Interval(mu)) * d[i];
    return (base + lin + higher).hi;
  }

  // Dual price of the greedy solution of max g.d over the box with sum d = s.
  double multiplier(const std::vector<Interval>& grad, const Box& b) const {
    std::vector<int> idx(static_cast<std::size_t>(n_));
    std::iota(idx.begin(), idx.end(), 0);
    auto mid = [&](int i) { return 0.5 * (grad[i].lo + grad[i].hi); };
    std::sort(idx.begin(), idx.end(), [&](int a, int z) { return mid(a) > mid(z); });
    double budget = 1.0;
    for (int i = 0; i < n_; ++i) budget -= b.lo[i];
    for (int i : idx) {
      double room = b.hi[i] - b.lo[i];
      if (budget <= room) return mid(i);
      budget -= room;
    }
    return mid(idx.back());
  }

  double incumbent(const Box& b) const {
    std::vector<double> x(static_cast<std::size_t>(n_));
    double sum = 0;
    for (int i = 0; i < n_; ++i) sum += (x[i] = 0.5 * (b.lo[i] + b.hi[i]));
    if (sum <= 0) return 0;
    for (auto& v : x) v /= sum;
    return f_.eval(x);
  }

  Flat f_;
  int n_;
  long budget_;
  std::vector<VertexSet> chains_;
};

}  // namespace detail

// Rigorous upper bound on lambda(G) by best-first branch-and-bound over boxes
// of the simplex. Components are certified separately; isolated vertices do
// not matter. Boxes whose bound is within tolerance of max(target, best value
// seen) are settled; the reported bound is the largest settled box bound.
inline CertifiedBound certify_upper_bound(const Hypergraph& g, double target, double tolerance, long budget = 4'000'000) {
  if (!(tolerance > 0)) throw InvalidInput("certification tolerance must be positive");
  CertifiedBound out;
  out.tolerance = tolerance;
  out.target = target;
  out.bound = 0;
  out.success = target + tolerance >= 0;
  for (const auto& comp : edge_components(g)) {
    if (static_cast<int>(comp.size()) > kCertifyMaxOrder)
      throw CapacityError("certification supports components of at most " + std::to_string(kCertifyMaxOrder) + " vertices");
    Hypergraph h = induced(g, comp);
    auto part = detail::Certifier(h, budget - out.boxes_explored).run(target, tolerance);
    out.bound = std::max(out.bound, part.bound);
    out.boxes_explored += part.boxes_explored;
    out.max_depth = std::max(out.max_depth, part.max_depth);
    out.exhausted = out.exhausted || part.exhausted;
    out.success = out.success && part.success;
    if (out.exhausted) break;
  }
  out.success = out.success && !out.exhausted && out.bound <= target + tolerance;
  return out;
}

}  // namespace hyperlag
