#pragma once

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "hyperlag/errors.hpp"

namespace hyperlag {

using Vertex = int;  // 1-based
using Edge = std::vector<Vertex>;
using VertexSet = std::vector<Vertex>;

inline std::string to_string(const Edge& e) {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < e.size(); ++i) os << (i ? "," : "") << e[i];
  os << '}';
  return os.str();
}

inline std::uint64_t binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t b = 1;
  for (int i = 1; i <= k; ++i) b = b * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  return b;
}

// Calls f(subset) for every k-subset of `pool` in lexicographic order.
template <class F>
void for_each_subset(const std::vector<Vertex>& pool, int k, F&& f) {
  const int n = static_cast<int>(pool.size());
  if (k < 0 || k > n) return;
  std::vector<int> idx(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) idx[i] = i;
  std::vector<Vertex> cur(static_cast<std::size_t>(k));
  while (true) {
    for (int i = 0; i < k; ++i) cur[i] = pool[idx[i]];
    f(static_cast<const std::vector<Vertex>&>(cur));
    int i = k - 1;
    while (i >= 0 && idx[i] == n - k + i) --i;
    if (i < 0) return;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

inline VertexSet range_set(Vertex lo, Vertex hi) {
  VertexSet s;
  for (Vertex v = lo; v <= hi; ++v) s.push_back(v);
  return s;
}

// An r-uniform hypergraph on vertices 1..n. Edges are sorted tuples kept in
// lexicographic order, so equal edge sets compare equal.
class Hypergraph {
 public:
  Hypergraph() = default;

  int order() const { return n_; }
  int uniformity() const { return r_; }
  std::size_t size() const { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }

  bool contains(const Edge& sorted_edge) const {
    return std::binary_search(edges_.begin(), edges_.end(), sorted_edge);
  }

  std::vector<int> degrees() const {
    std::vector<int> d(static_cast<std::size_t>(n_) + 1, 0);
    for (const auto& e : edges_)
      for (Vertex v : e) ++d[v];
    return d;
  }

  friend bool operator==(const Hypergraph&, const Hypergraph&) = default;

  friend Hypergraph make_hypergraph(int n, int r, std::vector<Edge> edges);

 private:
  Hypergraph(int n, int r, std::vector<Edge> edges) : n_(n), r_(r), edges_(std::move(edges)) {}

  int n_ = 0;
  int r_ = 3;
  std::vector<Edge> edges_;
};

// Validates and canonicalizes. Duplicate edges collapse (edges form a set).
inline Hypergraph make_hypergraph(int n, int r, std::vector<Edge> edges) {
  if (n < 0) throw InvalidInput("vertex count must be nonnegative");
  if (r < 1) throw InvalidInput("uniformity must be positive");
  for (auto& e : edges) {
    if (static_cast<int>(e.size()) != r)
      throw InvalidInput("edge " + to_string(e) + " has " + std::to_string(e.size()) +
                         " vertices, expected " + std::to_string(r));
    for (Vertex v : e)
      if (v < 1 || v > n)
        throw InvalidInput("edge " + to_string(e) + ": vertex " + std::to_string(v) +
                           " out of range 1.." + std::to_string(n));
    Edge sorted = e;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw InvalidInput("edge " + to_string(e) + " repeats a vertex");
    e = std::move(sorted);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return Hypergraph(n, r, std::move(edges));
}

inline Hypergraph empty_hypergraph(int n, int r) { return make_hypergraph(n, r, {}); }

inline Hypergraph complete_hypergraph(int t, int r) {
  std::vector<Edge> edges;
  for_each_subset(range_set(1, t), r, [&](const std::vector<Vertex>& s) { edges.push_back(s); });
  return make_hypergraph(t, r, std::move(edges));
}

inline Hypergraph complement(const Hypergraph& g) {
  std::vector<Edge> edges;
  for_each_subset(range_set(1, g.order()), g.uniformity(), [&](const std::vector<Vertex>& s) {
    if (!g.contains(s)) edges.push_back(s);
  });
  return make_hypergraph(g.order(), g.uniformity(), std::move(edges));
}

// Edges inside S, relabeled 1..|S| by ascending original id.
inline Hypergraph induced(const Hypergraph& g, VertexSet s) {
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  std::vector<int> label(static_cast<std::size_t>(g.order()) + 1, 0);
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] < 1 || s[i] > g.order()) throw InvalidInput("vertex " + std::to_string(s[i]) + " out of range");
    label[s[i]] = static_cast<int>(i) + 1;
  }
  std::vector<Edge> edges;
  for (const auto& e : g.edges()) {
    Edge f;
    for (Vertex v : e) {
      if (!label[v]) break;
      f.push_back(label[v]);
    }
    if (f.size() == e.size()) edges.push_back(std::move(f));
  }
  return make_hypergraph(static_cast<int>(s.size()), g.uniformity(), std::move(edges));
}

inline Hypergraph remove_vertices(const Hypergraph& g, const VertexSet& s) {
  std::vector<bool> drop(static_cast<std::size_t>(g.order()) + 1, false);
  for (Vertex v : s) {
    if (v < 1 || v > g.order()) throw InvalidInput("vertex " + std::to_string(v) + " out of range");
    drop[v] = true;
  }
  VertexSet keep;
  for (Vertex v = 1; v <= g.order(); ++v)
    if (!drop[v]) keep.push_back(v);
  return induced(g, keep);
}

inline Hypergraph remove_edge(const Hypergraph& g, const Edge& e) {
  std::vector<Edge> edges;
  for (const auto& f : g.edges())
    if (f != e) edges.push_back(f);
  return make_hypergraph(g.order(), g.uniformity(), std::move(edges));
}

inline Hypergraph add_edges(const Hypergraph& g, const std::vector<Edge>& extra) {
  std::vector<Edge> edges = g.edges();
  edges.insert(edges.end(), extra.begin(), extra.end());
  return make_hypergraph(g.order(), g.uniformity(), std::move(edges));
}

// The (r-1)-graph {e \ {v} : v in e}; v stays as an isolated vertex.
inline Hypergraph link_graph(const Hypergraph& g, Vertex v) {
  if (v < 1 || v > g.order()) throw InvalidInput("vertex " + std::to_string(v) + " out of range");
  if (g.uniformity() < 2) throw InvalidInput("link of a 1-graph is undefined");
  std::vector<Edge> edges;
  for (const auto& e : g.edges()) {
    if (!std::binary_search(e.begin(), e.end(), v)) continue;
    Edge f;
    for (Vertex u : e)
      if (u != v) f.push_back(u);
    edges.push_back(std::move(f));
  }
  return make_hypergraph(g.order(), g.uniformity() - 1, std::move(edges));
}

struct PairCover {
  bool covers = true;
  std::vector<std::pair<Vertex, Vertex>> uncovered;  // lexicographic
};

inline std::vector<std::vector<bool>> covered_pair_matrix(const Hypergraph& g) {
  const int n = g.order();
  std::vector<std::vector<bool>> cov(static_cast<std::size_t>(n) + 1, std::vector<bool>(static_cast<std::size_t>(n) + 1, false));
  for (const auto& e : g.edges())
    for (std::size_t a = 0; a < e.size(); ++a)
      for (std::size_t b = a + 1; b < e.size(); ++b) cov[e[a]][e[b]] = cov[e[b]][e[a]] = true;
  return cov;
}

inline PairCover covers_pairs(const Hypergraph& g) {
  PairCover out;
  auto cov = covered_pair_matrix(g);
  for (Vertex i = 1; i <= g.order(); ++i)
    for (Vertex j = i + 1; j <= g.order(); ++j)
      if (!cov[i][j]) out.uncovered.emplace_back(i, j);
  out.covers = out.uncovered.empty();
  return out;
}

// H^F: each uncovered pair {i,j} (lexicographic order) receives r-2 fresh
// vertices numbered from n+1 upward and the edge {i,j} plus those vertices.
inline Hypergraph extension(const Hypergraph& f) {
  const int r = f.uniformity();
  const auto pairs = covers_pairs(f).uncovered;
  int next = f.order() + 1;
  std::vector<Edge> edges = f.edges();
  for (const auto& [i, j] : pairs) {
    Edge e{i, j};
    for (int k = 0; k < r - 2; ++k) e.push_back(next++);
    edges.push_back(std::move(e));
  }
  return make_hypergraph(next - 1, r, std::move(edges));
}

inline Hypergraph disjoint_union(const Hypergraph& a, const Hypergraph& b) {
  if (a.uniformity() != b.uniformity())
    throw InvalidInput("disjoint union of a " + std::to_string(a.uniformity()) + "-graph and a " +
                       std::to_string(b.uniformity()) + "-graph");
  std::vector<Edge> edges = a.edges();
  for (auto e : b.edges()) {
    for (auto& v : e) v += a.order();
    edges.push_back(std::move(e));
  }
  return make_hypergraph(a.order() + b.order(), a.uniformity(), std::move(edges));
}

// Colex comparison of two sorted sets of equal size.
inline bool colex_less(const Edge& a, const Edge& b) {
  for (std::size_t i = a.size(); i-- > 0;)
    if (a[i] != b[i]) return a[i] < b[i];
  return false;
}

// The first m r-sets of N in colex order. n is the largest vertex used unless
// a larger n is requested.
inline Hypergraph colex_first(int r, std::uint64_t m, std::optional<int> n = std::nullopt) {
  if (r < 1) throw InvalidInput("uniformity must be positive");
  int top = r;
  while (binomial(top, r) < m) ++top;
  std::vector<Edge> all;
  for_each_subset(range_set(1, top), r, [&](const std::vector<Vertex>& s) { all.push_back(s); });
  std::sort(all.begin(), all.end(), colex_less);
  all.resize(static_cast<std::size_t>(m));
  int used = 0;
  for (const auto& e : all) used = std::max(used, e.back());
  if (n) {
    if (*n < used) throw InvalidInput("colex graph needs " + std::to_string(used) + " vertices");
    used = *n;
  }
  return make_hypergraph(used, r, std::move(all));
}

// L_G(j\i): (r-1)-sets e avoiding i with e+j an edge and e+i not an edge.
inline std::vector<Edge> link_difference(const Hypergraph& g, Vertex i, Vertex j) {
  if (i == j) throw InvalidInput("link difference needs distinct vertices");
  std::vector<Edge> out;
  for (const auto& e : g.edges()) {
    if (!std::binary_search(e.begin(), e.end(), j) || std::binary_search(e.begin(), e.end(), i)) continue;
    Edge rest, swapped;
    for (Vertex u : e)
      if (u != j) rest.push_back(u);
    swapped = rest;
    swapped.insert(std::upper_bound(swapped.begin(), swapped.end(), i), i);
    if (!g.contains(swapped)) out.push_back(std::move(rest));
  }
  return out;
}

inline bool interchangeable(const Hypergraph& g, Vertex i, Vertex j) {
  return link_difference(g, i, j).empty() && link_difference(g, j, i).empty();
}

// N*(x,y) = {v : vxy in E}.
inline VertexSet costars(const Hypergraph& g, Vertex x, Vertex y) {
  if (g.uniformity() != 3) throw InvalidInput("costars are defined for 3-graphs");
  if (x == y) throw InvalidInput("costars need distinct vertices");
  VertexSet out;
  for (const auto& e : g.edges()) {
    bool hx = std::binary_search(e.begin(), e.end(), x);
    bool hy = std::binary_search(e.begin(), e.end(), y);
    if (!hx || !hy) continue;
    for (Vertex v : e)
      if (v != x && v != y) out.push_back(v);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Vertex sets of the connected components that contain at least one edge.
inline std::vector<VertexSet> edge_components(const Hypergraph& g) {
  std::vector<int> parent(static_cast<std::size_t>(g.order()) + 1);
  for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = static_cast<int>(i);
  auto find = [&](int v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  std::vector<bool> touched(parent.size(), false);
  for (const auto& e : g.edges()) {
    for (Vertex v : e) touched[v] = true;
    for (std::size_t k = 1; k < e.size(); ++k) parent[find(e[k])] = find(e[0]);
  }
  std::vector<VertexSet> comps;
  std::vector<int> slot(parent.size(), -1);
  for (Vertex v = 1; v <= g.order(); ++v) {
    if (!touched[v]) continue;
    int root = find(v);
    if (slot[root] < 0) {
      slot[root] = static_cast<int>(comps.size());
      comps.emplace_back();
    }
    comps[slot[root]].push_back(v);
  }
  return comps;
}

}  // namespace hyperlag
