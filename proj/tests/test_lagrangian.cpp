#include <gtest/gtest.h>

#include "hyperlag/battery.hpp"
#include "hyperlag/certify.hpp"
#include "hyperlag/families.hpp"
#include "hyperlag/io.hpp"
#include "hyperlag/lagrangian.hpp"
#include "hyperlag/structure.hpp"
#include "oracles.hpp"

using namespace hyperlag;

namespace {

const double kRoot3Over18 = std::sqrt(3.0) / 18.0;

Hypergraph random_graph(Rng& rng, int n, int r) {
  const double p = 0.2 + 0.8 * rng.uniform();
  std::vector<Edge> edges;
  for (auto& s : oracle::subsets(n, r))
    if (rng.uniform() < p) edges.push_back(s);
  return make_hypergraph(n, r, edges);
}

std::vector<double> random_simplex_point(Rng& rng, int n) {
  std::vector<double> x(static_cast<std::size_t>(n));
  double s = 0;
  for (auto& v : x) s += (v = rng.exponential());
  for (auto& v : x) v /= s;
  return x;
}

}  // namespace

TEST(Weights, Validation) {
  EXPECT_NO_THROW(WeightVector({0.5, 0.5}));
  EXPECT_THROW(WeightVector({0.5, 0.6}), InvalidInput);
  EXPECT_THROW(WeightVector({1.5, -0.5}), InvalidInput);
  EXPECT_DOUBLE_EQ(WeightVector::uniform(4).of(3), 0.25);
}

TEST(Evaluate, Examples) {
  EXPECT_NEAR(evaluate(complete_hypergraph(4, 3), WeightVector::uniform(4)), 1.0 / 16, 1e-15);
  EXPECT_NEAR(evaluate(family(fam::SingleEdge{3}), WeightVector::uniform(3)), 1.0 / 27, 1e-15);
  EXPECT_NEAR(evaluate(complete_hypergraph(5, 3), WeightVector::uniform(5)), 2.0 / 25, 1e-15);
  std::vector<double> bad = {0.5, 0.5};
  EXPECT_THROW(evaluate(complete_hypergraph(4, 3), bad), InvalidInput);
}

TEST(Gradient, Examples) {
  auto g = gradient(complete_hypergraph(4, 3), WeightVector::uniform(4));
  for (double d : g) EXPECT_NEAR(d, 3.0 / 16, 1e-15);
  std::vector<double> x = {0.5, 0.5, 0};
  auto e = gradient(family(fam::SingleEdge{3}), x);
  EXPECT_NEAR(e[0], 0, 1e-15);
  EXPECT_NEAR(e[1], 0, 1e-15);
  EXPECT_NEAR(e[2], 0.25, 1e-15);
}

TEST(Gradient, MatchesFiniteDifferences) {
  Rng rng(13);
  for (int t = 0; t < 100; ++t) {
    const int n = 3 + static_cast<int>(rng.below(5));
    auto g = random_graph(rng, n, 3);
    auto x = random_simplex_point(rng, n);
    auto grad = gradient(g, x);
    const double h = 1e-6;
    for (int i = 0; i < n; ++i) {
      auto up = x, dn = x;
      up[static_cast<std::size_t>(i)] += h;
      dn[static_cast<std::size_t>(i)] -= h;
      const double fd = (oracle::poly_value(g, up) - oracle::poly_value(g, dn)) / (2 * h);
      const double scale = std::max(std::abs(fd), 1e-3);
      EXPECT_LE(std::abs(fd - grad[static_cast<std::size_t>(i)]) / scale, 1e-5);
    }
  }
}

TEST(Kkt, Examples) {
  EXPECT_NEAR(kkt_residual(complete_hypergraph(4, 3), WeightVector::uniform(4)), 0, 1e-15);
  std::vector<double> skew = {0.7, 0.1, 0.1, 0.1};
  EXPECT_GT(kkt_residual(complete_hypergraph(4, 3), skew), 1e-3);
  std::vector<double> first = {1.0 / 3, 1.0 / 3, 1.0 / 3, 0, 0, 0};
  EXPECT_NEAR(kkt_residual(family(fam::Mtr{2, 3}), first), 0, 1e-15);
}

TEST(Projection, LandsOnSimplexAndIsClosest) {
  Rng rng(17);
  for (int t = 0; t < 200; ++t) {
    const int n = 1 + static_cast<int>(rng.below(8));
    std::vector<double> y(static_cast<std::size_t>(n));
    for (auto& v : y) v = 4 * rng.uniform() - 2;
    auto p = y;
    detail::project_simplex(p);
    double s = 0;
    for (double v : p) {
      EXPECT_GE(v, 0);
      s += v;
    }
    EXPECT_NEAR(s, 1, 1e-12);
    auto dist = [&](const std::vector<double>& z) {
      double d = 0;
      for (std::size_t i = 0; i < z.size(); ++i) d += (z[i] - y[i]) * (z[i] - y[i]);
      return d;
    };
    for (int k = 0; k < 20; ++k) EXPECT_LE(dist(p), dist(random_simplex_point(rng, n)) + 1e-12);
  }
}

TEST(Maximize, CompleteGraphs) {
  for (int t = 3; t <= 9; ++t) {
    auto res = maximize(complete_hypergraph(t, 3));
    EXPECT_NEAR(res.value, static_cast<double>(binomial(t, 3)) / (t * t * t), 1e-9) << t;
    EXPECT_LE(res.kkt_residual, 1e-8);
    EXPECT_NEAR(res.value, evaluate(complete_hypergraph(t, 3), res.weights), 1e-12);
  }
  EXPECT_NEAR(maximize(complete_hypergraph(5, 3)).value, 2.0 / 25, 1e-9);
  EXPECT_NEAR(maximize(complete_hypergraph(6, 3)).value, 5.0 / 54, 1e-9);
  EXPECT_NEAR(maximize(complete_hypergraph(9, 3)).value, 28.0 / 243, 1e-9);
  EXPECT_NEAR(maximize(complete_hypergraph(6, 4)).value, 15.0 / 1296, 1e-9);
}

TEST(Maximize, B2MatchesClosedForm) {
  double prev = 0;
  for (int s = 5; s <= 28; ++s) {
    auto res = maximize(family(fam::B2{s}));
    EXPECT_NEAR(res.value, oracle::b2_closed_form(s), 1e-9) << "s = " << s;
    EXPECT_LT(res.value, kRoot3Over18);
    EXPECT_GE(res.value, prev - 1e-12);
    prev = res.value;
  }
  EXPECT_NEAR(prev, 0.09372, 1e-4);
}

TEST(Maximize, EdgeCases) {
  auto e = maximize(empty_hypergraph(4, 3));
  EXPECT_EQ(e.value, 0);
  EXPECT_EQ(e.method, Method::ClosedForm);
  EXPECT_NEAR(maximize(k4e()).value, 1.0 / 16, 1e-12);
  SolverConfig bad;
  bad.restarts = 0;
  EXPECT_THROW(maximize(complete_hypergraph(4, 3), bad), InvalidInput);
}

TEST(Maximize, SeedDeterminism) {
  Rng rng(5);
  for (int t = 0; t < 10; ++t) {
    auto g = random_graph(rng, 7, 3);
    SolverConfig cfg;
    cfg.seed = 42;
    auto a = maximize(g, cfg), b = maximize(g, cfg);
    EXPECT_EQ(a.value, b.value);
    EXPECT_EQ(a.weights.values(), b.weights.values());
    EXPECT_EQ(a.seed, 42u);
  }
}

TEST(Maximize, SubgraphMonotonicity) {
  Rng rng(31);
  for (int t = 0; t < 300; ++t) {
    const int n = 3 + static_cast<int>(rng.below(5));
    auto g = random_graph(rng, n, 3);
    std::vector<Edge> keep;
    for (const auto& e : g.edges())
      if (rng.uniform() < 0.7) keep.push_back(e);
    auto sub = make_hypergraph(n, 3, keep);
    EXPECT_LE(maximize(sub).value, maximize(g).value + 1e-7);
  }
}

TEST(Maximize, StationarityOnSupport) {
  Rng rng(41);
  for (int t = 0; t < 100; ++t) {
    auto g = random_graph(rng, 3 + static_cast<int>(rng.below(5)), 3);
    if (g.size() == 0) continue;
    auto res = maximize(g);
    EXPECT_LE(res.kkt_residual, 1e-8);
    auto grad = gradient(g, res.weights);
    for (std::size_t i = 0; i < grad.size(); ++i)
      if (res.weights[i] > kSupportEps) EXPECT_NEAR(grad[i], 3 * res.value, 1e-7);
  }
}

TEST(Symmetry, AveragingInterchangeableNeverHurts) {
  Rng rng(51);
  for (int t = 0; t < 80; ++t) {
    const int n = 4 + static_cast<int>(rng.below(4));
    auto g = random_graph(rng, n, 3);
    for (int i = 1; i <= n; ++i)
      for (int j = i + 1; j <= n; ++j) {
        if (!interchangeable(g, i, j)) continue;
        auto x = random_simplex_point(rng, n);
        auto y = x;
        y[static_cast<std::size_t>(i - 1)] = y[static_cast<std::size_t>(j - 1)] =
            (x[static_cast<std::size_t>(i - 1)] + x[static_cast<std::size_t>(j - 1)]) / 2;
        EXPECT_GE(oracle::poly_value(g, y), oracle::poly_value(g, x) - 1e-15);
      }
  }
}

TEST(Symmetry, DominatedVerticesCarryLessWeight) {
  Rng rng(61);
  for (int t = 0; t < 80; ++t) {
    const int n = 4 + static_cast<int>(rng.below(4));
    auto g = random_graph(rng, n, 3);
    auto res = maximize(g);
    for (int i = 1; i <= n; ++i)
      for (int j = 1; j <= n; ++j)
        if (i != j && link_difference(g, i, j).empty())
          EXPECT_GE(res.weights.of(i), res.weights.of(j) - 1e-9) << serialize(g) << i << " " << j;
  }
}

TEST(Grid, Examples) {
  EXPECT_NEAR(grid_oracle(complete_hypergraph(4, 3), 4), 1.0 / 16, 1e-15);
  EXPECT_NEAR(grid_oracle(complete_hypergraph(5, 3), 5), 2.0 / 25, 1e-15);
  auto b = family(fam::B2{5});
  EXPECT_NEAR(grid_oracle(b, 21), maximize(b).value, 5e-3);
  EXPECT_THROW(grid_oracle(b, 0), InvalidInput);
  EXPECT_THROW(grid_oracle(complete_hypergraph(9, 3), 60), CapacityError);
}

TEST(Grid, MatchesIndependentGrid) {
  Rng rng(71);
  for (int t = 0; t < 20; ++t) {
    auto g = random_graph(rng, 3 + static_cast<int>(rng.below(4)), 3);
    EXPECT_NEAR(grid_oracle(g, 9), oracle::simplex_grid_max(g, 9), 1e-14);
  }
}

TEST(Certify, Examples) {
  auto k5 = certify_upper_bound(complete_hypergraph(5, 3), 2.0 / 25, 1e-3);
  EXPECT_TRUE(k5.success);
  EXPECT_LE(k5.bound, 0.081);
  EXPECT_TRUE(certify_upper_bound(family(fam::SingleEdge{3}), 1.0 / 27, 1e-4).success);
  EXPECT_TRUE(certify_upper_bound(k4e(), 1.0 / 16, 1e-3).success);
}

TEST(Certify, NegativeControl) {
  // a target below the true value must not be certified
  auto c = certify_upper_bound(complete_hypergraph(5, 3), 0.07, 1e-3, 200000);
  EXPECT_FALSE(c.success);
  EXPECT_GE(c.bound, 0.08 - 1e-12);
}

TEST(Sandwich, GridMaximizeCertified) {
  Rng rng(2718);
  for (int t = 0; t < 50; ++t) {
    const int n = 3 + static_cast<int>(rng.below(5));
    auto g = random_graph(rng, n, 3);
    auto res = maximize(g);
    const double lo = grid_oracle(g, n <= 5 ? 20 : 10);
    EXPECT_LE(lo, res.value + 1e-9);
    auto c = certify_upper_bound(g, res.value, 1e-3);
    EXPECT_TRUE(c.success);
    EXPECT_GE(c.bound, res.value - 1e-9);
    if (g.size()) EXPECT_LE(res.kkt_residual, 1e-8);
  }
}

TEST(Densify, Examples) {
  EXPECT_EQ(densify(k4e()), complete_hypergraph(4, 3));
  EXPECT_EQ(densify(complete_hypergraph(4, 3)), complete_hypergraph(4, 3));
  auto d = densify(family(fam::B2{4}));
  EXPECT_TRUE(covers_pairs(d).covers);
  EXPECT_NEAR(maximize(d).value, maximize(family(fam::B2{4})).value, 1e-9);
}

TEST(MotzkinStraus, Examples) {
  auto tri = motzkin_straus_check(complete_hypergraph(3, 2));
  EXPECT_NEAR(tri.lambda, 1.0 / 3, 1e-9);
  EXPECT_EQ(tri.omega, 3);
  EXPECT_LE(tri.discrepancy, 1e-8);
  auto c5 = motzkin_straus_check(make_hypergraph(5, 2, {{1, 2}, {2, 3}, {3, 4}, {4, 5}, {1, 5}}));
  EXPECT_NEAR(c5.lambda, 0.25, 1e-9);
  EXPECT_EQ(c5.omega, 2);
  EXPECT_NEAR(motzkin_straus_check(complete_hypergraph(6, 2)).lambda, 5.0 / 12, 1e-9);
  EXPECT_THROW(motzkin_straus_check(complete_hypergraph(4, 3)), InvalidInput);
}

TEST(MotzkinStraus, RandomGraphs) {
  Rng rng(19);
  for (int t = 0; t < 200; ++t) {
    auto g = random_graph(rng, 2 + static_cast<int>(rng.below(6)), 2);
    const int w = oracle::clique_number(g);
    EXPECT_NEAR(maximize(g).value, 0.5 * (1 - 1.0 / w), 1e-7);
  }
}
