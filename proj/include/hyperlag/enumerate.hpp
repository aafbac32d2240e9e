#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <set>
#include <unordered_map>
#include <vector>

#include "hyperlag/hypergraph.hpp"
#include "hyperlag/structure.hpp"

namespace hyperlag {

inline constexpr int kEnumerateMaxOrder = 6;

namespace detail {

// Edge sets of an r-graph on [n] as bitmasks over the C(n,r) possible edges,
// with per-permutation lookup tables for the minimum-image canonical mask.
class MaskSpace {
 public:
  MaskSpace(int n, int r) : n_(n), r_(r) {
    for_each_subset(range_set(1, n), r, [&](const std::vector<Vertex>& e) { slots_.push_back(e); });
    bits_ = static_cast<int>(slots_.size());
    chunks_ = (bits_ + kChunk - 1) / kChunk;
    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 1);
    do {
      std::vector<int> image(static_cast<std::size_t>(bits_));
      for (int b = 0; b < bits_; ++b) {
        Edge e;
        for (Vertex v : slots_[b]) e.push_back(perm[v - 1]);
        std::sort(e.begin(), e.end());
        image[b] = slot_of(e);
      }
      std::vector<std::uint32_t> table(static_cast<std::size_t>(chunks_) << kChunk, 0);
      for (int c = 0; c < chunks_; ++c)
        for (std::uint32_t m = 0; m < (1u << kChunk); ++m) {
          std::uint32_t out = 0;
          for (int k = 0; k < kChunk; ++k) {
            int b = c * kChunk + k;
            if (b < bits_ && (m >> k & 1u)) out |= 1u << image[b];
          }
          table[(static_cast<std::size_t>(c) << kChunk) | m] = out;
        }
      tables_.push_back(std::move(table));
    } while (std::next_permutation(perm.begin(), perm.end()));
  }

  int bits() const { return bits_; }

  std::uint32_t canonical(std::uint32_t mask) const {
    std::uint32_t best = mask;
    for (const auto& t : tables_) {
      std::uint32_t img = 0;
      for (int c = 0; c < chunks_; ++c) img |= t[(static_cast<std::size_t>(c) << kChunk) | ((mask >> (c * kChunk)) & kMask)];
      best = std::min(best, img);
    }
    return best;
  }

  Hypergraph graph(std::uint32_t mask) const {
    std::vector<Edge> edges;
    for (int b = 0; b < bits_; ++b)
      if (mask >> b & 1u) edges.push_back(slots_[b]);
    return make_hypergraph(n_, r_, std::move(edges));
  }

 private:
  static constexpr int kChunk = 7;
  static constexpr std::uint32_t kMask = (1u << kChunk) - 1;

  int slot_of(const Edge& e) const {
    return static_cast<int>(std::lower_bound(slots_.begin(), slots_.end(), e) - slots_.begin());
  }

  int n_, r_, bits_ = 0, chunks_ = 0;
  std::vector<Edge> slots_;
  std::vector<std::vector<std::uint32_t>> tables_;
};

}  // namespace detail

// Streams one representative per isomorphism class of F-free r-graphs on
// exactly n vertices, ordered by edge count and then by canonical mask.
// Free-ness is hereditary, so classes are grown one edge at a time.
inline std::size_t enumerate_free(int n, const std::vector<Hypergraph>& forbidden,
                                  const std::function<void(const Hypergraph&)>& sink, int r = 3) {
  if (n > kEnumerateMaxOrder)
    throw CapacityError("enumeration supports at most " + std::to_string(kEnumerateMaxOrder) + " vertices, got " +
                        std::to_string(n));
  if (n < 0) throw InvalidInput("vertex count must be nonnegative");
  if (r != 2 && r != 3) throw CapacityError("enumeration supports uniformity 2 or 3");
  std::vector<Hypergraph> patterns;
  for (const auto& f : forbidden)
    if (f.uniformity() == r && f.order() <= n) patterns.push_back(f);

  detail::MaskSpace space(n, r);
  auto free_mask = [&](std::uint32_t m) { return patterns.empty() || is_free(space.graph(m), patterns); };

  std::size_t count = 0;
  std::vector<std::uint32_t> level;
  if (free_mask(0)) level.push_back(0);
  while (!level.empty()) {
    for (auto m : level) {
      sink(space.graph(m));
      ++count;
    }
    std::set<std::uint32_t> next;
    std::unordered_map<std::uint32_t, bool> seen;
    for (auto m : level)
      for (int b = 0; b < space.bits(); ++b) {
        if (m >> b & 1u) continue;
        auto c = space.canonical(m | (1u << b));
        auto [it, fresh] = seen.try_emplace(c, false);
        if (fresh) {
          it->second = free_mask(c);
          if (it->second) next.insert(c);
        }
      }
    level.assign(next.begin(), next.end());
  }
  return count;
}

inline std::vector<Hypergraph> enumerate_free(int n, const std::vector<Hypergraph>& forbidden, int r = 3) {
  std::vector<Hypergraph> out;
  enumerate_free(n, forbidden, [&](const Hypergraph& g) { out.push_back(g); }, r);
  return out;
}

}  // namespace hyperlag
