#pragma once

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "hyperlag/battery.hpp"
#include "hyperlag/families.hpp"
#include "hyperlag/lagrangian.hpp"
#include "hyperlag/structure.hpp"

namespace hyperlag {

// Outcome of one verification suite run from the command line.
struct SuiteResult {
  std::string name;
  bool pass = true;
  std::vector<std::string> lines;  // human-readable detail, one check per line
  nlohmann::json data = nlohmann::json::object();

  void check(bool ok, const std::string& what) {
    pass = pass && ok;
    lines.push_back(std::string(ok ? "ok   " : "FAIL ") + what);
  }
};

inline std::string fmt_double(double v, int digits = 12) {
  std::ostringstream os;
  os.precision(digits);
  os << v;
  return os.str();
}

// Random 2-graph with a random vertex count in [2, max_n] and edge density.
inline Hypergraph random_graph(Rng& rng, int max_n, int r = 2) {
  const int n = 2 + static_cast<int>(rng.below(static_cast<std::size_t>(max_n - 1)));
  const double p = rng.uniform();
  std::vector<Edge> edges;
  for_each_subset(range_set(1, n), r, [&](const std::vector<Vertex>& e) {
    if (rng.uniform() < p) edges.push_back(e);
  });
  return make_hypergraph(n, r, std::move(edges));
}

inline SuiteResult lagrangian_suite(const SolverConfig& cfg = {}) {
  SuiteResult s;
  s.name = "lagrangian";
  for (int t = 4; t <= 9; ++t) {
    auto res = maximize(complete_hypergraph(t, 3), cfg);
    const double exact = static_cast<double>(binomial(t, 3)) / (t * t * t);
    const double err = std::abs(res.value - exact);
    s.data["complete"].push_back({{"t", t}, {"value", res.value}, {"exact", exact}, {"kkt", res.kkt_residual}});
    s.check(err <= 1e-8 && res.kkt_residual <= 1e-8,
            "lambda(K_" + std::to_string(t) + "^3) = " + fmt_double(res.value) + ", error " + fmt_double(err, 3));
  }
  double prev = 0;
  bool mono = true, below = true;
  for (int n = 7; n <= 30; ++n) {
    auto res = maximize(family(fam::B2{n - 2}), cfg);
    mono = mono && res.value >= prev - 1e-12;
    below = below && res.value < constants::kSqrt3Over18 + 1e-9;
    prev = res.value;
    s.data["b2"].push_back({{"n", n}, {"value", res.value}, {"kkt", res.kkt_residual}});
  }
  s.check(mono, "lambda(B(2,n-2)) nondecreasing for n = 7..30");
  s.check(below, "lambda(B(2,n-2)) below sqrt3/18 for n = 7..30");
  s.check(prev >= 0.0937 - 1e-4, "lambda(B(2,28)) = " + fmt_double(prev));
  for (const auto& [label, g] : {std::pair{std::string("H1(9)"), family(fam::H1{9})},
                                 std::pair{std::string("H2(9)"), family(fam::H2{9, {}})}}) {
    auto res = maximize(g, cfg);
    s.data["h"][label] = res.value;
    s.check(res.value <= constants::kSqrt3Over18 + 1e-7, "lambda(" + label + ") = " + fmt_double(res.value));
  }
  return s;
}

inline SuiteResult motzkin_straus_suite(std::uint64_t seed = 0, int graphs = 200, int max_n = 7,
                                        const SolverConfig& cfg = {}) {
  SuiteResult s;
  s.name = "motzkin-straus";
  double worst = 0;
  for (int i = 0; i < graphs; ++i) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(i)));
    auto g = random_graph(rng, max_n);
    worst = std::max(worst, motzkin_straus_check(g, cfg).discrepancy);
  }
  s.data["graphs"] = graphs;
  s.data["max_discrepancy"] = worst;
  s.check(worst <= 1e-7, std::to_string(graphs) + " random 2-graphs, max |lambda - (1 - 1/omega)/2| = " + fmt_double(worst, 3));
  return s;
}

inline SuiteResult colex_suite(const SolverConfig& cfg = {}) {
  SuiteResult s;
  s.name = "colex";
  for (int t = 4; t <= 7; ++t) {
    const double target = maximize(complete_hypergraph(t - 1, 3), cfg).value;
    const auto lo = binomial(t - 1, 3), hi = lo + binomial(t - 2, 2);
    double worst = 0;
    for (auto m = lo; m <= hi; ++m) {
      auto v = maximize(colex_first(3, m), cfg).value;
      worst = std::max(worst, std::abs(v - target));
      s.data["cases"].push_back({{"t", t}, {"m", m}, {"value", v}});
    }
    s.check(worst <= 1e-8, "t = " + std::to_string(t) + ": lambda(C_{3,m}) = lambda(K_" + std::to_string(t - 1) +
                               "^3) for m = " + std::to_string(lo) + ".." + std::to_string(hi) + ", max error " +
                               fmt_double(worst, 3));
  }
  return s;
}

inline SuiteResult battery_suite(const BatteryConfig& cfg = {}) {
  SuiteResult s;
  s.name = "battery";
  auto report = verify_battery(cfg);
  std::istringstream table(to_table(report));
  for (std::string line; std::getline(table, line);) s.lines.push_back(line);
  s.pass = report.pass;
  s.data = to_json(report);
  return s;
}

}  // namespace hyperlag
