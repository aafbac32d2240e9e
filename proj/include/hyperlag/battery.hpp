#pragma once

#include <cmath>
#include <functional>
#include <future>
#include <iomanip>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "hyperlag/families.hpp"
#include "hyperlag/interval.hpp"
#include "hyperlag/programs.hpp"

namespace hyperlag {

// Numeric constants used by the reduced programs, each with where it comes from.
struct NamedConstant {
  const char* name;
  double value;
  const char* origin;
};

namespace constants {
inline const double kSqrt3Over18 = std::sqrt(3.0) / 18.0;
inline constexpr double kPiK4Upper = 0.5615;       // Turan density bound for K4 (flag algebra)
inline constexpr double kPiM2Upper = 12.0 / 25.0;  // Lagrangian density bound for two disjoint edges
inline constexpr double kK4FreeWeight = 0.0848;    // weight of a vertex whose removal kills every K4
inline constexpr double kPairSum = 0.22354;        // c + d lower bound in the appendix
inline constexpr double kHalfPairSum = 0.11177;    // d threshold splitting the appendix cases
inline constexpr double kPairSumBc = 0.307;        // b + c lower bound when d < 0.11177
inline constexpr double kTauBound = 0.0789;        // bound proved for the A4 program
inline constexpr double kA3Bound = 0.092;          // bound proved for the A3 programs
inline constexpr double kY2WeightFloor = 0.08;     // c >= 0.08 in the Y2 program
inline constexpr double kDoubleCountedC = 0.33531; // 0.11177 + 0.22354
}  // namespace constants

inline std::vector<NamedConstant> constants_table() {
  using namespace constants;
  return {
      {"sqrt3/18", kSqrt3Over18, "target Lagrangian of the extremal construction"},
      {"0.5615", kPiK4Upper, "upper bound on the Turan density of K4^3"},
      {"12/25", kPiM2Upper, "Lagrangian density bound for the 3-graph of two disjoint edges"},
      {"0.0848", kK4FreeWeight, "weight lower bound for a vertex meeting every K4^3"},
      {"0.22354", kPairSum, "lower bound on c + d in the appendix claims"},
      {"0.11177", kHalfPairSum, "case split d >= 0.11177"},
      {"0.307", kPairSumBc, "lower bound on b + c when d < 0.11177"},
      {"0.0789", kTauBound, "bound of the A4 program, reused by A3"},
      {"0.092", kA3Bound, "bound of the A3 programs, reused by A2"},
      {"0.08", kY2WeightFloor, "lower bound on c in the Y2 program"},
      {"0.33531", kDoubleCountedC, "0.11177 + 0.22354 in A3 case 1"},
      {"28/243", 28.0 / 243.0, "lambda(K_9^3)"},
      {"0.0864", 0.0864, "f(7/25) with f(a) = a(1-a)^2/2 + (1-a)^3/27"},
  };
}

// A stationary-point identity the reduction argument derives; it is only
// meaningful when the listed coordinates are positive at the maximizer.
struct ProgramIdentity {
  std::string label;
  std::vector<int> positive;
  std::function<double(std::span<const double>)> residual;
};

struct NamedProgram {
  PolyProgram program;
  std::vector<ProgramIdentity> identities;
  std::vector<double> expected_argmax;  // closed-form maximizer where one is stated
};

namespace detail {

inline PolyProgram simplex_program(std::string name, std::vector<std::string> vars, double total = 1.0) {
  PolyProgram p;
  p.name = std::move(name);
  const int k = static_cast<int>(vars.size());
  p.vars = std::move(vars);
  p.objective = Polynomial(k);
  p.equalities.push_back(sum_equals(k, total));
  for (int i = 0; i < k; ++i) p.inequalities.push_back(coordinate_at_least(k, i, 0.0, p.vars[i] + ">=0"));
  p.lower.assign(static_cast<std::size_t>(k), 0.0);
  p.upper.assign(static_cast<std::size_t>(k), total);
  return p;
}

inline PolyProgram interval_program(std::string name, std::string var, double lo, double hi) {
  PolyProgram p;
  p.name = std::move(name);
  p.vars = {var};
  p.objective = Polynomial(1);
  p.inequalities.push_back(coordinate_at_least(1, 0, lo, var + ">=" + std::to_string(lo)));
  p.inequalities.push_back({{-1.0}, -hi, var + "<=" + std::to_string(hi)});
  p.lower = {lo};
  p.upper = {hi};
  return p;
}

inline void fix(PolyProgram& p, int i, double v) {
  p.equalities.push_back(coordinate_equals(p.k(), i, v, p.vars[i] + "=" + std::to_string(v)));
}

inline Polynomial h1_objective() {
  auto x = Polynomial::variables(5);
  auto &a = x[0], &b = x[1], &c = x[2], &d = x[3], &e = x[4];
  return a * b * (c + d + e) + a * (c * c / 4 + d * d / 4 + e * e / 2 + c * d + c * e + d * e) +
         b * (c * c / 4 + d * d / 4 + c * d + c * e + d * e) + c * c * d / 4;
}

inline Polynomial h2_objective() {
  auto x = Polynomial::variables(5);
  auto &a = x[0], &b = x[1], &c = x[2], &d = x[3], &e = x[4];
  return a * b * (c + d + e) + a * (c * c / 2 + d * d / 2 + e * e / 2 + c * d + c * e + d * e) +
         b * (c * c / 4 + e * e / 2 + c * d + c * e + d * e) + c * c * d / 4;
}

inline Polynomial x3_objective() {
  auto x = Polynomial::variables(4);
  auto &a = x[0], &b = x[1], &c = x[2], &t = x[3];
  auto inner = 5.0 * c * c / 12 + c * t + t * t / 2;
  return a * b * (c + t) + (a + b) * inner + c.pow(3) / 27;
}

inline Polynomial x2_objective() {
  auto x = Polynomial::variables(5);
  auto &a = x[0], &b = x[1], &c = x[2], &d = x[3], &e = x[4];
  return a * b * d + a * (c * d + c * e + d * e + d * d / 2 + e * e / 2) + b * (c * d + c * e + d * e + e * e / 2) +
         2.0 * (a + b + c).pow(3) / 25 + (d + e) * c * c / 4;
}

inline Polynomial y2_objective() {
  auto x = Polynomial::variables(5);
  auto &al = x[0], &c = x[1], &d = x[2], &e = x[3], &f = x[4];
  return al * al * (c + d + e + f) / 4 + al * c * (d + e) + al * (d * e + e * e / 2) +
         (al + c) * (d * f + e * f + f * f / 2) + d * d * (al + e + f) / 4;
}

inline std::vector<std::string> battery_ids() {
  return {"fact_aaa",     "b2n",          "h1",           "h1_b0",        "h2",           "h2_e0",
          "perfect_case1", "perfect_case2", "claim_n8",     "claim_k4_free_vertex",
          "x3",           "x3_delta0",    "x2_eq1",       "x2_b0",        "x2_e0",        "x2_c0",
          "x2_final",     "y2_eq6",       "y2_2a0",       "y2_2f0",       "y2_2e0",       "y2_2d0",
          "y2_final",     "app_a4",       "app_a3_case1", "app_a3_case2", "app_a2_case1", "app_a2_case2"};
}

inline NamedProgram build_named(const std::string& id, int param) {
  using namespace constants;
  const double s3 = kSqrt3Over18;
  NamedProgram out;
  PolyProgram& p = out.program;

  if (id == "fact_aaa") {
    p = interval_program(id, "x", 0.0, 1.0);
    auto x = Polynomial::variable(1, 0);
    p.objective = x * x * (1.0 - x) / 4 + x * (1.0 - x).pow(2) / 2;
    p.paper_bound = s3;
    p.source = "one heavy pair against a complete remainder, max at x = (3 - sqrt 3)/3";
    out.expected_argmax = {(3.0 - std::sqrt(3.0)) / 3.0};
  } else if (id == "b2n") {
    const int n = param ? param : 30;
    if (n < 4) throw ProgramError("b2n needs n >= 4");
    p = simplex_program(id + ":" + std::to_string(n), {"a", "s"});
    auto v = Polynomial::variables(2);
    const double m = n - 2;
    // a = weight of {1,2} split evenly, s = the other n-2 vertices split evenly.
    p.objective = v[0] * v[0] * v[1] / 4 + v[0] * v[1] * v[1] * ((m - 1) / (2 * m));
    p.paper_bound = s3;
    p.source = "B(2, n-2) with x1 = x2 = a/2 and equal weights elsewhere";
  } else if (id == "h1" || id == "h1_b0") {
    p = simplex_program(id, {"a", "b", "c", "d", "e"});
    p.objective = h1_objective();
    p.paper_bound = s3;
    p.source = "grouped weights of H1";
    if (id == "h1_b0") {
      fix(p, 1, 0.0);
      p.paper_bound = 0.0864;
      p.source = "H1 with b = 0, bound f(7/25)";
    }
  } else if (id == "h2" || id == "h2_e0") {
    p = simplex_program(id, {"a", "b", "c", "d", "e"});
    p.objective = h2_objective();
    p.paper_bound = s3;
    p.source = "grouped weights of H2";
    out.identities.push_back({"c = 2d", {2, 3}, [](std::span<const double> x) { return x[2] - 2 * x[3]; }});
    out.identities.push_back({"d = b", {0, 1, 2, 3, 4}, [](std::span<const double> x) { return x[3] - x[1]; }});
    if (id == "h2_e0") {
      fix(p, 4, 0.0);
      p.paper_bound = 0.094;
      p.source = "H2 with e = 0, max at d = (2 sqrt 57 - 4)/53";
    }
  } else if (id == "perfect_case1") {
    p = interval_program(id, "x", 0.0, 1.0 - 2.0 * std::sqrt(14.0) / 9.0);
    auto x = Polynomial::variable(1, 0);
    p.objective = s3 * (1.0 - x).pow(3);
    p.denominator = 1.0 - 3.0 * x;
    p.paper_bound = 28.0 / 243.0;
    p.source = "removing a light vertex from a dense counterexample";
  } else if (id == "claim_k4_free_vertex") {
    p = interval_program(id, "x", 0.0, kK4FreeWeight);
    auto x = Polynomial::variable(1, 0);
    p.objective = (kPiK4Upper / 6.0) * (1.0 - x).pow(3);
    p.denominator = 1.0 - 3.0 * x;
    p.paper_bound = 0.09622;
    p.source = "a vertex meeting every K4^3 has weight above 0.0848";
  } else if (id == "perfect_case2") {
    p = interval_program(id, "a", 0.0, 0.5);
    auto a = Polynomial::variable(1, 0);
    p.objective = 0.1 * (1.0 - 2.0 * a).pow(3) + a * a * (1.0 - 2.0 * a) + (6.0 / 7.0) * a * (1.0 - 2.0 * a).pow(2);
    p.paper_bound = 28.0 / 243.0;
    p.source = "two heavy vertices spanning S_{2,8}";
    out.expected_argmax = {(43.0 - std::sqrt(1255.0)) / 66.0};
  } else if (id == "claim_n8") {
    p = interval_program(id, "x", 0.0, 1.0);
    auto x = Polynomial::variable(1, 0);
    p.objective = (5.0 / 12.0) * x * (1.0 - x).pow(2) + (kPiM2Upper / 6.0) * (1.0 - x).pow(3);
    p.paper_bound = 0.095;
    p.source = "a 7-vertex dense graph, link clique 6 at the heaviest vertex";
    out.expected_argmax = {53.0 / 303.0};
  } else if (id == "x3" || id == "x3_delta0") {
    p = simplex_program(id, {"a", "b", "c", "delta"});
    p.objective = x3_objective();
    p.paper_bound = s3;
    p.source = "grouped weights around an X3";
    if (id == "x3_delta0") {
      fix(p, 3, 0.0);
      p.paper_bound = 0.0921;
      p.source = "X3 program with delta = 0";
    }
  } else if (id.rfind("x2_", 0) == 0 && id != "x2_final") {
    p = simplex_program(id, {"a", "b", "c", "d", "e"});
    p.objective = x2_objective();
    p.paper_bound = s3;
    p.source = "grouped weights around an X2";
    if (id == "x2_b0") {
      fix(p, 1, 0.0);
    } else if (id == "x2_e0") {
      fix(p, 4, 0.0);
      p.paper_bound = 0.0939;
    } else if (id == "x2_c0") {
      fix(p, 2, 0.0);
      p.paper_bound = 0.083;
    } else if (id != "x2_eq1") {
      throw ProgramError("unknown program '" + id + "'");
    }
  } else if (id == "x2_final") {
    p.name = id;
    p.vars = {"b", "c"};
    auto v = Polynomial::variables(2);
    auto &b = v[0], &c = v[1];
    p.objective = 16.0 * b.pow(3) - 1.5 * b * c * c - 9.0 * b * b + 1.5 * b + (3.0 * b + c).pow(3) / 12 +
                  (1.0 - 3.0 * b - c) * c * c / 4;
    p.inequalities = {coordinate_at_least(2, 0, 0.0, "b>=0"), coordinate_at_least(2, 1, 0.0, "c>=0"),
                      {{-5.0, -1.0}, -1.0, "5b+c<=1"}};
    p.lower = {0.0, 0.0};
    p.upper = {0.2, 1.0};
    p.paper_bound = s3;
    p.source = "X2 program after the stationarity substitutions";
  } else if (id.rfind("y2_", 0) == 0 && id != "y2_final") {
    p = simplex_program(id, {"alpha", "c", "d", "e", "f"});
    p.objective = y2_objective();
    p.inequalities.push_back(coordinate_at_least(5, 1, kY2WeightFloor, "c>=0.08"));
    p.paper_bound = s3;
    p.source = "grouped weights around a Y2";
    out.identities.push_back({"alpha = d + e", {0, 1, 2, 3, 4}, [](std::span<const double> x) { return x[0] - x[2] - x[3]; }});
    if (id == "y2_2a0") {
      fix(p, 0, 0.0);
      p.paper_bound = 0.0864;
    } else if (id == "y2_2f0") {
      fix(p, 4, 0.0);
      p.paper_bound = 0.096;
    } else if (id == "y2_2e0") {
      fix(p, 3, 0.0);  // ends in a contradiction; only the sqrt3/18 bound is checked
    } else if (id == "y2_2d0") {
      fix(p, 2, 0.0);
      p.paper_bound = 0.0955;
    } else if (id != "y2_eq6") {
      throw ProgramError("unknown program '" + id + "'");
    }
  } else if (id == "y2_final") {
    p.name = id;
    p.vars = {"alpha", "c"};
    auto v = Polynomial::variables(2);
    auto &al = v[0], &c = v[1];
    p.objective = -5.0 * al.pow(3) / 108 + 14.0 * al * al * c / 9 - 11.0 * al * al / 36 + 23.0 * al * c * c / 18 -
                  14.0 * al * c / 9 + 5.0 * al / 18 + 25.0 * c.pow(3) / 54 - 8.0 * c * c / 9 + 7.0 * c / 18 + 1.0 / 27;
    p.inequalities = {{{-2.0, -1.0}, -1.0, "2alpha+c<=1"}, coordinate_at_least(2, 0, 2.0 / 9.0, "alpha>=2/9"),
                      coordinate_at_least(2, 1, kY2WeightFloor, "c>=0.08")};
    p.lower = {2.0 / 9.0, kY2WeightFloor};
    p.upper = {0.5, 1.0};
    p.paper_bound = 0.096;
    p.source = "Y2 program after the stationarity substitutions";
  } else if (id == "app_a4") {
    p = simplex_program(id, {"alpha", "gamma", "eta"});
    auto v = Polynomial::variables(3);
    auto &al = v[0], &g = v[1], &et = v[2];
    p.objective = al * al * g / 4 + al * g * g / 4 + al * et * et / 2 + et * (al + g).pow(2) / 4;
    p.inequalities.push_back(coordinate_at_least(3, 1, kPairSum, "gamma>=0.22354"));
    p.inequalities.push_back({{1.0, -1.0, 0.0}, 0.0, "alpha>=gamma"});
    p.paper_bound = kTauBound;
    p.source = "tau(alpha, gamma, eta)";
  } else if (id == "app_a3_case1") {
    p = simplex_program(id, {"alpha", "eta", "rho"}, 1.0 - kDoubleCountedC);
    auto v = Polynomial::variables(3);
    auto &al = v[0], &et = v[1], &rho = v[2];
    p.objective = kTauBound * (al + kDoubleCountedC + et).pow(3) + kDoubleCountedC * al * rho +
                  (et * rho + rho * rho / 2) * (al + kPairSum);
    p.paper_bound = kA3Bound;
    p.source = "tau with d >= 0.11177";
  } else if (id == "app_a3_case2") {
    p = simplex_program(id, {"alpha", "beta", "eta", "rho"}, 1.0 - kK4FreeWeight);
    auto v = Polynomial::variables(4);
    auto &al = v[0], &be = v[1], &et = v[2], &rho = v[3];
    p.objective = kTauBound * (al + be + kK4FreeWeight + et).pow(3) + (al * be + kK4FreeWeight * al) * rho +
                  (et * rho + rho * rho / 2) * (al + be);
    p.inequalities.push_back(coordinate_at_least(4, 1, kPairSumBc, "beta>=0.307"));
    p.paper_bound = kA3Bound;
    p.source = "tau with d < 0.11177";
  } else if (id == "app_a2_case1") {
    p = simplex_program(id, {"alpha", "zeta", "eta"}, 1.0 - kHalfPairSum);
    auto v = Polynomial::variables(3);
    auto &al = v[0], &ze = v[1], &et = v[2];
    p.objective = kA3Bound * (al + kHalfPairSum + ze).pow(3) + al * al * et / 4 + (ze * et + et * et / 2) * (al + kHalfPairSum);
    p.paper_bound = 0.096;
    p.source = "lambda with d >= 0.11177";
  } else if (id == "app_a2_case2") {
    p = simplex_program(id, {"a", "beta", "zeta", "eta"}, 1.0 - kK4FreeWeight);
    auto v = Polynomial::variables(4);
    auto &a = v[0], &be = v[1], &ze = v[2], &et = v[3];
    p.objective = kA3Bound * (a + be + kK4FreeWeight + ze).pow(3) + a * be * et +
                  (ze * et + et * et / 2) * (a + be + kK4FreeWeight);
    p.inequalities.push_back(coordinate_at_least(4, 1, kPairSumBc, "beta>=0.307"));
    p.paper_bound = 0.0961;
    p.source = "lambda with d < 0.11177";
  } else {
    throw ProgramError("unknown program '" + id + "'");
  }
  p.validate();
  return out;
}

}  // namespace detail

// Identifiers accepted by named_program, in battery order.
inline std::vector<std::string> battery_names() { return detail::battery_ids(); }

// "b2n" takes an optional vertex count, as in "b2n:12".
inline NamedProgram named_program_full(const std::string& name) {
  std::string id = name;
  int param = 0;
  if (auto colon = name.find(':'); colon != std::string::npos) {
    id = name.substr(0, colon);
    if (id != "b2n") throw ProgramError("program '" + id + "' takes no parameter");
    try {
      std::size_t used = 0;
      param = std::stoi(name.substr(colon + 1), &used);
      if (used != name.size() - colon - 1) throw std::invalid_argument("trailing text");
    } catch (const std::exception&) {
      throw ProgramError("bad parameter in '" + name + "'");
    }
  }
  return detail::build_named(id, param);
}

inline PolyProgram named_program(const std::string& name) { return named_program_full(name).program; }

// Sign check of 2137b^3 - 882b^2 + 125b - 6 on a closed interval: sampled at
// `samples` points and confirmed by interval Horner evaluation on the cells
// between samples. Returns true when the cubic keeps one strict sign.
inline bool cubic_root_free(double lo, double hi, int samples = 10000) {
  auto horner = [](Interval b) {
    Interval v(2137.0);
    v = v * b + Interval(-882.0);
    v = v * b + Interval(125.0);
    return v * b + Interval(-6.0);
  };
  auto point = [](double b) { return ((2137.0 * b - 882.0) * b + 125.0) * b - 6.0; };
  const double s0 = point(lo);
  if (s0 == 0) return false;
  const bool negative = s0 < 0;
  for (int i = 0; i <= samples; ++i)
    if ((point(lo + (hi - lo) * i / samples) < 0) != negative) return false;
  std::vector<std::pair<double, double>> cells;
  for (int i = 0; i < samples; ++i) cells.emplace_back(lo + (hi - lo) * i / samples, lo + (hi - lo) * (i + 1) / samples);
  while (!cells.empty()) {
    auto [a, z] = cells.back();
    cells.pop_back();
    Interval v = horner(Interval(Interval::down(a), Interval::up(z)));
    if (negative ? v.hi < 0 : v.lo > 0) continue;
    if (z - a < 1e-14) return false;
    const double m = 0.5 * (a + z);
    cells.emplace_back(a, m);
    cells.emplace_back(m, z);
  }
  return true;
}

struct BatteryEntry {
  std::string name;
  ProgramResult result;
  double bound = 0;
  bool gap_ok = false;
  bool pass = false;
  std::vector<std::pair<std::string, double>> identities;  // checked only when applicable
  std::optional<double> argmax_error;
};

struct BatteryCheck {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct BatteryReport {
  std::vector<BatteryEntry> entries;
  std::vector<BatteryCheck> checks;
  bool pass = false;
};

struct BatteryConfig {
  ProgramConfig program;
  std::map<std::string, double> bound_overrides;
  std::vector<std::string> names;  // empty means the whole battery
  bool parallel = true;
  double oracle_gap_tolerance = 1e-5;
  double identity_tolerance = 1e-6;
};

inline BatteryEntry run_battery_entry(const std::string& name, const BatteryConfig& cfg) {
  NamedProgram np = named_program_full(name);
  if (auto it = cfg.bound_overrides.find(name); it != cfg.bound_overrides.end()) np.program.paper_bound = it->second;
  BatteryEntry e;
  e.name = name;
  e.result = solve_program(np.program, cfg.program);
  e.bound = np.program.paper_bound;
  const double gap = e.result.oracle_gap();
  e.gap_ok = !cfg.program.oracle || (std::isfinite(gap) && gap >= -kBoundSlack && gap <= cfg.oracle_gap_tolerance);
  bool ids_ok = true;
  for (const auto& id : np.identities) {
    bool applies = true;
    for (int i : id.positive) applies = applies && e.result.argmax[static_cast<std::size_t>(i)] > 1e-7;
    if (!applies) continue;
    const double r = id.residual(e.result.argmax);
    e.identities.emplace_back(id.label, r);
    ids_ok = ids_ok && std::abs(r) <= cfg.identity_tolerance;
  }
  bool arg_ok = true;
  if (!np.expected_argmax.empty()) {
    double err = 0;
    for (std::size_t i = 0; i < np.expected_argmax.size(); ++i)
      err = std::max(err, std::abs(e.result.argmax[i] - np.expected_argmax[i]));
    e.argmax_error = err;
    arg_ok = err <= 1e-6;
  }
  e.pass = e.result.satisfied && e.gap_ok && ids_ok && arg_ok;
  return e;
}

// Solves every requested program (concurrently unless disabled) and adds the
// cubic root-freeness check used by the X2 argument.
inline BatteryReport verify_battery(const BatteryConfig& cfg = {}) {
  BatteryReport report;
  auto names = cfg.names.empty() ? battery_names() : cfg.names;
  if (cfg.parallel) {
    std::vector<std::future<BatteryEntry>> jobs;
    for (const auto& n : names) jobs.push_back(std::async(std::launch::async, run_battery_entry, n, std::cref(cfg)));
    for (auto& j : jobs) report.entries.push_back(j.get());
  } else {
    for (const auto& n : names) report.entries.push_back(run_battery_entry(n, cfg));
  }
  const bool low = cubic_root_free(0.0, 1.0 / 9.0);
  const bool high = cubic_root_free(1.0 / 8.0, 1.0 / 5.0);
  report.checks.push_back({"cubic 2137b^3-882b^2+125b-6 root-free on [0,1/9]", low, low ? "single sign" : "sign change"});
  report.checks.push_back({"cubic 2137b^3-882b^2+125b-6 root-free on [1/8,1/5]", high, high ? "single sign" : "sign change"});
  report.pass = true;
  for (const auto& e : report.entries) report.pass = report.pass && e.pass;
  for (const auto& c : report.checks) report.pass = report.pass && c.pass;
  return report;
}

inline nlohmann::json to_json(const BatteryReport& r) {
  nlohmann::json out;
  out["pass"] = r.pass;
  auto& entries = out["programs"] = nlohmann::json::array();
  for (const auto& e : r.entries) {
    nlohmann::json j{{"name", e.name},
                     {"value", e.result.value},
                     {"bound", e.bound},
                     {"margin", e.bound - e.result.value},
                     {"satisfied", e.result.satisfied},
                     {"oracle_value", e.result.oracle_value},
                     {"oracle_gap", e.result.oracle_gap()},
                     {"argmax", e.result.argmax},
                     {"active_set", e.result.active_set},
                     {"kkt_residual", e.result.kkt_residual},
                     {"vertex_attained", e.result.vertex_attained},
                     {"faces", e.result.faces},
                     {"stationary_points", e.result.stationary_points},
                     {"newton_failures", e.result.newton_failures},
                     {"status", e.pass ? "PASS" : "FAIL"}};
    for (const auto& [label, res] : e.identities) j["identities"][label] = res;
    if (e.argmax_error) j["argmax_error"] = *e.argmax_error;
    entries.push_back(std::move(j));
  }
  for (const auto& c : r.checks) out["checks"].push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
  return out;
}

inline std::string to_table(const BatteryReport& r) {
  std::ostringstream os;
  os << std::left << std::setw(22) << "name" << std::right << std::setw(17) << "value" << std::setw(14) << "bound"
     << std::setw(14) << "margin" << std::setw(12) << "oracle gap" << "  status\n";
  for (const auto& e : r.entries) {
    os << std::left << std::setw(22) << e.name << std::right << std::fixed << std::setprecision(12) << std::setw(17)
       << e.result.value << std::setprecision(8) << std::setw(14) << e.bound << std::setw(14)
       << e.bound - e.result.value << std::scientific << std::setprecision(2) << std::setw(12) << e.result.oracle_gap()
       << std::defaultfloat << "  " << (e.pass ? "PASS" : "FAIL") << "\n";
  }
  for (const auto& c : r.checks) os << c.name << ": " << (c.pass ? "PASS" : "FAIL") << " (" << c.detail << ")\n";
  os << "battery: " << (r.pass ? "PASS" : "FAIL") << "\n";
  return os.str();
}

// A concrete hypergraph paired with a program whose maximum bounds its
// Lagrangian from above (weights are grouped, so the program relaxes).
struct ReductionBridge {
  Hypergraph graph;
  PolyProgram program;
};

inline ReductionBridge reduction_bridge(const std::string& name, int n = 0) {
  if (name == "b2n") {
    const int order = n ? n : 10;
    return {family(fam::B2{order - 2}), named_program("b2n:" + std::to_string(order))};
  }
  if (name == "h1") {
    const int order = n ? n : 9;
    return {family(fam::H1{order}), named_program("h1")};
  }
  if (name == "h2") {
    const int order = n ? n : 9;
    return {family(fam::H2{order, {}}), named_program("h2")};
  }
  if (name == "x3") {
    // X3 on {1..8} with the 3-partite triples on C = {3..8}, plus D = {9, 10}
    // joined to the pair {1,2} and to C through 1 and 2.
    std::vector<Edge> edges;
    for (int p : {3, 5, 7}) {
      for (const auto& t : std::vector<Edge>{{1, 2, p}, {1, 2, p + 1}, {1, p, p + 1}, {2, p, p + 1}}) edges.push_back(t);
    }
    for (int u : {3, 4})
      for (int v : {5, 6})
        for (int w : {7, 8}) edges.push_back({u, v, w});
    for (int d : {9, 10}) {
      edges.push_back({1, 2, d});
      for (int c = 3; c <= 8; ++c) {
        edges.push_back({1, c, d});
        edges.push_back({2, c, d});
      }
    }
    edges.push_back({1, 9, 10});
    return {make_hypergraph(10, 3, std::move(edges)), named_program("x3")};
  }
  throw ProgramError("no reduction bridge named '" + name + "'");
}

}  // namespace hyperlag
