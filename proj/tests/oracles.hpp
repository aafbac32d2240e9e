#pragma once

// Brute-force reference implementations used only by the tests. They share
// no code with the library beyond the Hypergraph container.

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <vector>

#include "hyperlag/hypergraph.hpp"

namespace oracle {

using hyperlag::Hypergraph;
using EdgeSet = std::set<std::vector<int>>;

inline EdgeSet edge_set(const Hypergraph& g) { return EdgeSet(g.edges().begin(), g.edges().end()); }

inline std::vector<std::vector<int>> subsets(int n, int k) {
  std::vector<std::vector<int>> out;
  for (unsigned m = 0; m < (1u << n); ++m) {
    if (std::popcount(m) != static_cast<unsigned>(k)) continue;
    std::vector<int> s;
    for (int v = 0; v < n; ++v)
      if (m >> v & 1u) s.push_back(v + 1);
    out.push_back(s);
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline bool has_edge(const EdgeSet& e, std::vector<int> s) {
  std::sort(s.begin(), s.end());
  return e.count(s) > 0;
}

// Tries every injective map V(H) -> V(G).
inline bool contains(const Hypergraph& g, const Hypergraph& h) {
  const int n = g.order(), k = h.order();
  if (k > n) return false;
  auto ge = edge_set(g);
  std::vector<int> pick(static_cast<std::size_t>(n));
  std::iota(pick.begin(), pick.end(), 1);
  for (unsigned m = 0; m < (1u << n); ++m) {
    if (std::popcount(m) != static_cast<unsigned>(k)) continue;
    std::vector<int> img;
    for (int v = 0; v < n; ++v)
      if (m >> v & 1u) img.push_back(v + 1);
    do {
      bool ok = true;
      for (const auto& e : h.edges()) {
        std::vector<int> f;
        for (int v : e) f.push_back(img[static_cast<std::size_t>(v - 1)]);
        if (!has_edge(ge, f)) { ok = false; break; }
      }
      if (ok) return true;
    } while (std::next_permutation(img.begin(), img.end()));
  }
  return false;
}

inline int clique_number(const Hypergraph& g) {
  auto ge = edge_set(g);
  int best = g.order() > 0 ? 1 : 0;
  for (unsigned m = 0; m < (1u << g.order()); ++m) {
    std::vector<int> s;
    for (int v = 0; v < g.order(); ++v)
      if (m >> v & 1u) s.push_back(v + 1);
    bool clique = true;
    for (std::size_t a = 0; a < s.size() && clique; ++a)
      for (std::size_t b = a + 1; b < s.size() && clique; ++b) clique = ge.count({s[a], s[b]}) > 0;
    if (clique) best = std::max(best, static_cast<int>(s.size()));
  }
  return best;
}

// Minimum sorted edge list over all n! relabelings.
inline std::vector<std::vector<int>> canonical(const Hypergraph& g) {
  std::vector<int> perm(static_cast<std::size_t>(g.order()));
  std::iota(perm.begin(), perm.end(), 1);
  std::vector<std::vector<int>> best;
  bool first = true;
  do {
    std::vector<std::vector<int>> edges;
    for (const auto& e : g.edges()) {
      std::vector<int> f;
      for (int v : e) f.push_back(perm[static_cast<std::size_t>(v - 1)]);
      std::sort(f.begin(), f.end());
      edges.push_back(f);
    }
    std::sort(edges.begin(), edges.end());
    if (first || edges < best) best = edges;
    first = false;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

// Isomorphism classes of 3-graphs on n vertices avoiding every pattern, by
// exhaustive listing of edge subsets (n <= 5).
inline std::size_t count_free_classes(int n, const std::vector<Hypergraph>& forbidden, int r = 3) {
  auto all = subsets(n, r);
  std::set<std::vector<std::vector<int>>> classes;
  for (unsigned long m = 0; m < (1ul << all.size()); ++m) {
    std::vector<hyperlag::Edge> edges;
    for (std::size_t b = 0; b < all.size(); ++b)
      if (m >> b & 1ul) edges.push_back(all[b]);
    auto g = hyperlag::make_hypergraph(n, r, edges);
    bool ok = true;
    for (const auto& f : forbidden)
      if (contains(g, f)) { ok = false; break; }
    if (ok) classes.insert(canonical(g));
  }
  return classes.size();
}

inline double poly_value(const Hypergraph& g, const std::vector<double>& x) {
  double s = 0;
  for (const auto& e : g.edges()) {
    double p = 1;
    for (int v : e) p *= x[static_cast<std::size_t>(v - 1)];
    s += p;
  }
  return s;
}

// Maximum over the simplex grid {x : x_i = k_i / mesh}.
inline double simplex_grid_max(const Hypergraph& g, int mesh) {
  const int n = g.order();
  std::vector<int> k(static_cast<std::size_t>(n), 0);
  double best = 0;
  std::function<void(int, int)> rec = [&](int i, int left) {
    if (i == n - 1) {
      k[static_cast<std::size_t>(i)] = left;
      std::vector<double> x(static_cast<std::size_t>(n));
      for (int j = 0; j < n; ++j) x[static_cast<std::size_t>(j)] = static_cast<double>(k[static_cast<std::size_t>(j)]) / mesh;
      best = std::max(best, poly_value(g, x));
      return;
    }
    for (int c = 0; c <= left; ++c) {
      k[static_cast<std::size_t>(i)] = c;
      rec(i + 1, left - c);
    }
  };
  if (n > 0) rec(0, mesh);
  return best;
}

// lambda(B(2, s)) reduced to one variable: vertices 1, 2 get a/2 each and the
// remaining s vertices share 1-a equally. f(a) = a^2(1-a)/4 + a(1-a)^2(s-1)/(2s).
// Its critical points are roots of a quadratic; returns the best of those and
// the endpoints.
inline double b2_closed_form(int s) {
  const double c = (s - 1.0) / (2.0 * s);
  auto f = [&](double a) { return a * a * (1 - a) / 4 + c * a * (1 - a) * (1 - a); };
  // f'(a) = (2a - 3a^2)/4 + c(1 - 4a + 3a^2)
  const double qa = 3 * c - 0.75, qb = 0.5 - 4 * c, qc = c;
  double best = std::max(f(0), f(1));
  if (std::abs(qa) < 1e-15) {
    double a = -qc / qb;
    if (a >= 0 && a <= 1) best = std::max(best, f(a));
  } else {
    double disc = qb * qb - 4 * qa * qc;
    if (disc >= 0)
      for (double sg : {-1.0, 1.0}) {
        double a = (-qb + sg * std::sqrt(disc)) / (2 * qa);
        if (a >= 0 && a <= 1) best = std::max(best, f(a));
      }
  }
  return best;
}

// Maximum of f on [lo, hi]: a fine scan picks the bracket, golden-section
// search refines it.
template <class F>
std::pair<double, double> univariate_max(F f, double lo, double hi) {
  const int n = 20000;
  int best = 0;
  for (int i = 1; i <= n; ++i)
    if (f(lo + (hi - lo) * i / n) > f(lo + (hi - lo) * best / n)) best = i;
  double a = lo + (hi - lo) * std::max(0, best - 1) / n, b = lo + (hi - lo) * std::min(n, best + 1) / n;
  const double g = (std::sqrt(5.0) - 1) / 2;
  for (int it = 0; it < 200; ++it) {
    double c = b - g * (b - a), d = a + g * (b - a);
    if (f(c) < f(d)) a = c;
    else b = d;
  }
  double x = (a + b) / 2;
  for (double e : {lo, hi})
    if (f(e) > f(x)) x = e;
  return {x, f(x)};
}

}  // namespace oracle
