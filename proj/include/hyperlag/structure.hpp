#pragma once

#include <bit>
#include <cstdint>
#include <optional>
#include <vector>

#include "hyperlag/hypergraph.hpp"

namespace hyperlag {

// Injective vertex map V(H) -> V(G); image[h-1] is the image of h.
struct Embedding {
  std::vector<Vertex> image;
  Vertex at(Vertex h) const { return image.at(static_cast<std::size_t>(h) - 1); }
};

namespace detail {

class EdgeIndex {
 public:
  explicit EdgeIndex(const Hypergraph& g) : base_(static_cast<std::uint64_t>(g.order()) + 1) {
    keys_.reserve(g.size());
    for (const auto& e : g.edges()) keys_.push_back(key(e));
    std::sort(keys_.begin(), keys_.end());
  }
  std::uint64_t key(const Edge& sorted) const {
    std::uint64_t k = 0;
    for (Vertex v : sorted) k = k * base_ + static_cast<std::uint64_t>(v);
    return k;
  }
  bool has(const Edge& sorted) const { return std::binary_search(keys_.begin(), keys_.end(), key(sorted)); }

 private:
  std::uint64_t base_;
  std::vector<std::uint64_t> keys_;
};

class SubgraphSearch {
 public:
  SubgraphSearch(const Hypergraph& g, const Hypergraph& h) : g_(g), h_(h), index_(g) {
    plan();
  }

  std::optional<Embedding> run() {
    if (h_.order() > g_.order()) return std::nullopt;
    if (h_.size() > g_.size()) return std::nullopt;
    map_.assign(static_cast<std::size_t>(h_.order()) + 1, 0);
    used_.assign(static_cast<std::size_t>(g_.order()) + 1, false);
    if (!extend(0)) return std::nullopt;
    Embedding emb;
    for (Vertex v = 1; v <= h_.order(); ++v) emb.image.push_back(map_[v]);
    return emb;
  }

 private:
  void plan() {
    const int hn = h_.order();
    auto hdeg = h_.degrees();
    gdeg_ = g_.degrees();
    hdeg_ = hdeg;
    std::vector<bool> placed(static_cast<std::size_t>(hn) + 1, false);
    std::vector<int> pos(static_cast<std::size_t>(hn) + 1, -1);
    for (int step = 0; step < hn; ++step) {
      Vertex best = 0;
      long best_score[3] = {-1, -1, -1};
      for (Vertex v = 1; v <= hn; ++v) {
        if (placed[v]) continue;
        long closed = 0, touching = 0;
        for (const auto& e : h_.edges()) {
          if (!std::binary_search(e.begin(), e.end(), v)) continue;
          int outside = 0;
          bool meets = false;
          for (Vertex u : e) {
            if (u == v) continue;
            if (placed[u]) meets = true;
            else ++outside;
          }
          if (outside == 0) ++closed;
          if (meets) ++touching;
        }
        long score[3] = {closed, touching, hdeg[v]};
        if (std::lexicographical_compare(best_score, best_score + 3, score, score + 3)) {
          std::copy(score, score + 3, best_score);
          best = v;
        }
      }
      placed[best] = true;
      pos[best] = step;
      order_.push_back(best);
    }
    checks_.assign(static_cast<std::size_t>(hn), {});
    for (const auto& e : h_.edges()) {
      int last = 0;
      for (Vertex u : e) last = std::max(last, pos[u]);
      checks_[last].push_back(e);
    }
  }

  bool extend(std::size_t k) {
    if (k == order_.size()) return true;
    const Vertex hv = order_[k];
    Edge img;
    for (Vertex gv = 1; gv <= g_.order(); ++gv) {
      if (used_[gv] || gdeg_[gv] < hdeg_[hv]) continue;
      map_[hv] = gv;
      bool ok = true;
      for (const auto& e : checks_[k]) {
        img.clear();
        for (Vertex u : e) img.push_back(map_[u]);
        std::sort(img.begin(), img.end());
        if (!index_.has(img)) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      used_[gv] = true;
      if (extend(k + 1)) return true;
      used_[gv] = false;
    }
    map_[hv] = 0;
    return false;
  }

  const Hypergraph& g_;
  const Hypergraph& h_;
  EdgeIndex index_;
  std::vector<int> gdeg_, hdeg_;
  std::vector<Vertex> order_;
  std::vector<std::vector<Edge>> checks_;
  std::vector<Vertex> map_;
  std::vector<bool> used_;
};

}  // namespace detail

// Some (not necessarily induced) copy of H in G, or nothing.
inline std::optional<Embedding> contains_subgraph(const Hypergraph& g, const Hypergraph& h) {
  if (g.uniformity() != h.uniformity())
    throw InvalidInput("containment between a " + std::to_string(g.uniformity()) + "-graph and a " +
                       std::to_string(h.uniformity()) + "-graph");
  return detail::SubgraphSearch(g, h).run();
}

inline bool is_free(const Hypergraph& g, const std::vector<Hypergraph>& forbidden) {
  for (const auto& f : forbidden)
    if (f.uniformity() == g.uniformity() && contains_subgraph(g, f)) return false;
  return true;
}

namespace detail {

inline void clique_search(const std::vector<std::uint64_t>& adj, int size, std::uint64_t cand, int& best) {
  if (!cand) {
    best = std::max(best, size);
    return;
  }
  while (cand) {
    if (size + std::popcount(cand) <= best) return;
    int v = std::countr_zero(cand);
    cand &= cand - 1;
    clique_search(adj, size + 1, cand & adj[v], best);
  }
}

}  // namespace detail

// omega(G) for a 2-graph with at most 64 vertices.
inline int clique_number(const Hypergraph& g) {
  if (g.uniformity() != 2) throw InvalidInput("clique number needs a 2-graph");
  if (g.order() > 64) throw CapacityError("clique number supports at most 64 vertices");
  if (g.order() == 0) return 0;
  std::vector<std::uint64_t> adj(static_cast<std::size_t>(g.order()), 0);
  for (const auto& e : g.edges()) {
    adj[e[0] - 1] |= std::uint64_t{1} << (e[1] - 1);
    adj[e[1] - 1] |= std::uint64_t{1} << (e[0] - 1);
  }
  std::uint64_t all = g.order() == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << g.order()) - 1;
  int best = 1;
  detail::clique_search(adj, 0, all, best);
  return best;
}

inline int link_clique_number(const Hypergraph& g, Vertex v) {
  if (g.uniformity() != 3) throw InvalidInput("link clique number needs a 3-graph");
  return clique_number(link_graph(g, v));
}

}  // namespace hyperlag
