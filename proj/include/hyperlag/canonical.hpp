#pragma once

#include <compare>
#include <map>
#include <string>
#include <vector>

#include "hyperlag/hypergraph.hpp"
#include "hyperlag/structure.hpp"

namespace hyperlag {

// Total-order isomorphism key. When exact is false the key is an invariant
// only: equal keys do not imply isomorphism.
struct CanonicalForm {
  std::string key;
  bool exact = true;
  // labeling[v-1] is the canonical label of vertex v (a permutation of 1..n).
  std::vector<Vertex> labeling;

  friend bool operator==(const CanonicalForm& a, const CanonicalForm& b) { return a.exact == b.exact && a.key == b.key; }
  friend auto operator<=>(const CanonicalForm& a, const CanonicalForm& b) {
    if (auto c = a.exact <=> b.exact; c != 0) return c;
    return a.key <=> b.key;
  }
};

inline constexpr int kCanonicalExactThreshold = 10;

namespace detail {

// Color refinement on vertex colors 0..k-1 (0-based vertices). Colors are
// re-ranked by sorted signature so the result depends only on structure.
class Refiner {
 public:
  explicit Refiner(const Hypergraph& g) : g_(g), incident_(static_cast<std::size_t>(g.order())) {
    for (std::size_t k = 0; k < g.edges().size(); ++k)
      for (Vertex v : g.edges()[k]) incident_[v - 1].push_back(k);
  }

  int refine(std::vector<int>& color) const {
    const int n = g_.order();
    int classes = count(color);
    while (true) {
      std::vector<std::vector<int>> sig(static_cast<std::size_t>(n));
      for (int v = 0; v < n; ++v) {
        std::vector<std::vector<int>> around;
        for (auto k : incident_[v]) {
          std::vector<int> t;
          for (Vertex u : g_.edges()[k])
            if (u - 1 != v) t.push_back(color[u - 1]);
          std::sort(t.begin(), t.end());
          around.push_back(std::move(t));
        }
        std::sort(around.begin(), around.end());
        auto& s = sig[v];
        s.push_back(color[v]);
        s.push_back(static_cast<int>(around.size()));
        for (auto& t : around) s.insert(s.end(), t.begin(), t.end());
      }
      auto sorted = sig;
      std::sort(sorted.begin(), sorted.end());
      sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
      for (int v = 0; v < n; ++v)
        color[v] = static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), sig[v]) - sorted.begin());
      int now = static_cast<int>(sorted.size());
      if (now == classes) return now;
      classes = now;
    }
  }

  static int count(const std::vector<int>& color) {
    auto c = color;
    std::sort(c.begin(), c.end());
    return static_cast<int>(std::unique(c.begin(), c.end()) - c.begin());
  }

 private:
  const Hypergraph& g_;
  std::vector<std::vector<std::size_t>> incident_;
};

inline std::vector<std::uint64_t> relabeled_codes(const Hypergraph& g, const std::vector<int>& label) {
  const std::uint64_t base = static_cast<std::uint64_t>(g.order()) + 1;
  std::vector<std::uint64_t> codes;
  codes.reserve(g.size());
  std::vector<int> t;
  for (const auto& e : g.edges()) {
    t.clear();
    for (Vertex v : e) t.push_back(label[v - 1] + 1);
    std::sort(t.begin(), t.end());
    std::uint64_t c = 0;
    for (int x : t) c = c * base + static_cast<std::uint64_t>(x);
    codes.push_back(c);
  }
  std::sort(codes.begin(), codes.end());
  return codes;
}

class CanonicalSearch {
 public:
  explicit CanonicalSearch(const Hypergraph& g) : g_(g), refiner_(g) { find_twins(); }

  void run() {
    std::vector<int> color(static_cast<std::size_t>(g_.order()), 0);
    refiner_.refine(color);
    descend(color);
  }

  std::vector<std::uint64_t> best_codes;
  std::vector<int> best_label;

 private:
  void descend(const std::vector<int>& color) {
    const int n = g_.order();
    const int k = Refiner::count(color);
    if (k == n) {
      auto codes = relabeled_codes(g_, color);
      if (best_label.empty() || codes < best_codes) {
        best_codes = std::move(codes);
        best_label = color;
      }
      return;
    }
    std::vector<int> size(static_cast<std::size_t>(k), 0);
    for (int c : color) ++size[c];
    int target = 0;
    while (size[target] == 1) ++target;
    std::vector<bool> tried(static_cast<std::size_t>(n), false);
    for (int v = 0; v < n; ++v) {
      if (color[v] != target || tried[twin_[v]]) continue;
      tried[twin_[v]] = true;
      std::vector<int> child(color);
      for (int u = 0; u < n; ++u) child[u] = 2 * color[u] + (color[u] == target && u != v ? 1 : 0);
      refiner_.refine(child);
      descend(child);
    }
  }

  // twin_[v] is the smallest u such that the transposition (u v) is an
  // automorphism. Such a transposition fixes every individualized vertex, so
  // branching on v and on u yields the same leaves.
  void find_twins() {
    const int n = g_.order();
    twin_.resize(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) {
      twin_[v] = v;
      for (int u = 0; u < v; ++u)
        if (twin_[u] == u && swap_is_automorphism(u + 1, v + 1)) {
          twin_[v] = u;
          break;
        }
    }
  }

  bool swap_is_automorphism(Vertex a, Vertex b) const {
    Edge img;
    for (const auto& e : g_.edges()) {
      img = e;
      bool moved = false;
      for (auto& x : img)
        if (x == a || x == b) {
          x = x == a ? b : a;
          moved = true;
        }
      if (!moved) continue;
      std::sort(img.begin(), img.end());
      if (!g_.contains(img)) return false;
    }
    return true;
  }

  const Hypergraph& g_;
  Refiner refiner_;
  std::vector<int> twin_;
};

}  // namespace detail

// Exact for n <= exact_threshold via individualization-refinement with the
// minimum relabeled edge list as key; above the threshold the key is a
// refinement invariant and exact is false.
inline CanonicalForm canonical_form(const Hypergraph& g, int exact_threshold = kCanonicalExactThreshold) {
  const int n = g.order();
  std::string head = std::to_string(n) + ' ' + std::to_string(g.uniformity()) + ' ' + std::to_string(g.size()) + '|';
  CanonicalForm out;
  const bool trivial = g.size() == 0 || g.size() == binomial(n, g.uniformity());
  if (trivial || n <= exact_threshold) {
    std::vector<int> label(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) label[v] = v;
    std::vector<std::uint64_t> codes;
    if (trivial) {
      codes = detail::relabeled_codes(g, label);
    } else {
      detail::CanonicalSearch search(g);
      search.run();
      codes = search.best_codes;
      label = search.best_label;
    }
    out.key = head;
    for (auto c : codes) out.key += std::to_string(c) + ',';
    for (int v = 0; v < n; ++v) out.labeling.push_back(label[v] + 1);
    out.exact = true;
    return out;
  }
  std::vector<int> color(static_cast<std::size_t>(n), 0);
  detail::Refiner(g).refine(color);
  std::vector<int> sizes(static_cast<std::size_t>(detail::Refiner::count(color)), 0);
  for (int c : color) ++sizes[c];
  std::vector<std::vector<int>> pattern;
  for (const auto& e : g.edges()) {
    std::vector<int> t;
    for (Vertex v : e) t.push_back(color[v - 1]);
    std::sort(t.begin(), t.end());
    pattern.push_back(std::move(t));
  }
  std::sort(pattern.begin(), pattern.end());
  out.key = "~" + head;
  for (int s : sizes) out.key += std::to_string(s) + ',';
  out.key += '|';
  for (const auto& t : pattern) {
    for (int c : t) out.key += std::to_string(c) + '.';
    out.key += ',';
  }
  // Non-canonical labeling: vertices ordered by refined color, then id.
  std::vector<int> idx(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) idx[v] = v;
  std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) { return color[a] < color[b]; });
  out.labeling.assign(static_cast<std::size_t>(n), 0);
  for (int p = 0; p < n; ++p) out.labeling[idx[p]] = p + 1;
  out.exact = false;
  return out;
}

// The relabeled copy sigma(G) with sigma(v) = labeling[v-1].
inline Hypergraph relabel(const Hypergraph& g, const std::vector<Vertex>& labeling) {
  std::vector<Edge> edges;
  for (auto e : g.edges()) {
    for (auto& v : e) v = labeling.at(static_cast<std::size_t>(v) - 1);
    edges.push_back(std::move(e));
  }
  return make_hypergraph(g.order(), g.uniformity(), std::move(edges));
}

// Exact at every size: canonical keys up to the threshold, a bijective
// containment search above it.
inline bool isomorphic(const Hypergraph& a, const Hypergraph& b) {
  if (a.order() != b.order() || a.uniformity() != b.uniformity() || a.size() != b.size()) return false;
  if (a.order() <= kCanonicalExactThreshold) return canonical_form(a) == canonical_form(b);
  return contains_subgraph(a, b).has_value();
}

}  // namespace hyperlag
