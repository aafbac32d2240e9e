#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "hyperlag/errors.hpp"
#include "hyperlag/hypergraph.hpp"

namespace hyperlag {

inline constexpr double kSimplexSumTolerance = 1e-12;

// A point of the simplex; index v-1 holds the weight of vertex v.
class WeightVector {
 public:
  WeightVector() = default;
  explicit WeightVector(std::vector<double> w) : w_(std::move(w)) {
    if (w_.empty()) return;
    double sum = 0;
    for (double x : w_) {
      if (!(x >= 0) || !std::isfinite(x)) throw InvalidInput("weights must be finite and nonnegative");
      sum += x;
    }
    if (std::abs(sum - 1.0) > kSimplexSumTolerance * static_cast<double>(w_.size()))
      throw InvalidInput("weights sum to " + std::to_string(sum) + ", not 1");
  }

  static WeightVector uniform(int n) {
    return WeightVector(std::vector<double>(static_cast<std::size_t>(n), n ? 1.0 / n : 0.0));
  }

  std::size_t size() const { return w_.size(); }
  double operator[](std::size_t i) const { return w_[i]; }
  double of(Vertex v) const { return w_.at(static_cast<std::size_t>(v) - 1); }
  const std::vector<double>& values() const { return w_; }
  operator std::span<const double>() const { return w_; }

 private:
  std::vector<double> w_;
};

// Deterministic seed derivation and sampling shared by the randomized parts.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t k) { return splitmix64(splitmix64(master) ^ splitmix64(k + 0x632be59bd9b4e019ULL)); }

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : s_(seed) {}
  std::uint64_t next() {
    s_ += 0x9e3779b97f4a7c15ULL;
    return splitmix64(s_);
  }
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }  // [0,1)
  std::size_t below(std::size_t n) { return static_cast<std::size_t>(uniform() * static_cast<double>(n)); }
  double exponential() { return -std::log1p(-uniform()); }

 private:
  std::uint64_t s_;
};

}  // namespace hyperlag
