#include <gtest/gtest.h>

#include "hyperlag/battery.hpp"
#include "hyperlag/lagrangian.hpp"
#include "hyperlag/programs.hpp"
#include "oracles.hpp"

using namespace hyperlag;

namespace {

const double kRoot3Over18 = std::sqrt(3.0) / 18.0;

PolyProgram toy_program() {
  // maximize x*y*z on x + y + z = 1, x >= 0.5
  PolyProgram p;
  p.name = "toy";
  p.vars = {"x", "y", "z"};
  auto v = Polynomial::variables(3);
  p.objective = v[0] * v[1] * v[2];
  p.equalities.push_back(sum_equals(3, 1.0));
  for (int i = 0; i < 3; ++i) p.inequalities.push_back(coordinate_at_least(3, i, 0.0, p.vars[i] + " >= 0"));
  p.inequalities.push_back(coordinate_at_least(3, 0, 0.5, "x >= 0.5"));
  p.lower = {0, 0, 0};
  p.upper = {1, 1, 1};
  p.paper_bound = 1.0 / 32;
  return p;
}

}  // namespace

TEST(Polynomial, Arithmetic) {
  auto x = Polynomial::variables(2);
  auto p = (x[0] + 2.0 * x[1]).pow(2) - x[0] * x[0];
  std::vector<double> pt = {3, 5};
  EXPECT_DOUBLE_EQ(p(pt), 13.0 * 13.0 - 9.0);
  EXPECT_EQ(p.degree(), 2);
  EXPECT_DOUBLE_EQ(p.derivative(1)(pt), 4 * 13.0);
  EXPECT_TRUE((x[0] - x[0]).is_zero());
  EXPECT_EQ((x[0] * x[1] - 1.0).to_string({"a", "b"}), "a*b - 1");
  EXPECT_THROW(x[0] + Polynomial::variable(3, 0), ProgramError);
  EXPECT_THROW(Polynomial(8), ProgramError);
  EXPECT_THROW(Polynomial::variable(2, 2), ProgramError);
}

TEST(Polynomial, DerivativeMatchesFiniteDifference) {
  auto x = Polynomial::variables(3);
  auto p = x[0] * x[1] * x[2] + 0.5 * x[0].pow(3) - x[1] * x[1] + 2.0;
  std::vector<double> pt = {0.3, -0.7, 1.1};
  for (int i = 0; i < 3; ++i) {
    auto up = pt, dn = pt;
    up[static_cast<std::size_t>(i)] += 1e-6;
    dn[static_cast<std::size_t>(i)] -= 1e-6;
    EXPECT_NEAR(p.derivative(i)(pt), (p(up) - p(dn)) / 2e-6, 1e-7);
  }
}

TEST(Solve, ToyProgram) {
  auto r = solve_program(toy_program());
  EXPECT_NEAR(r.value, 1.0 / 32, 1e-12);
  EXPECT_NEAR(r.argmax[0], 0.5, 1e-9);
  EXPECT_NEAR(r.argmax[1], 0.25, 1e-9);
  EXPECT_NE(std::find(r.active_set.begin(), r.active_set.end(), "x >= 0.5"), r.active_set.end());
  EXPECT_LE(r.kkt_residual, 1e-9);
  EXPECT_TRUE(r.satisfied);
  EXPECT_LE(std::abs(r.oracle_gap()), 1e-9);
}

TEST(Solve, VertexOptimum) {
  // linear objective: optimum at a vertex of the simplex
  PolyProgram p = toy_program();
  auto v = Polynomial::variables(3);
  p.objective = v[0] + 2.0 * v[1];
  auto r = solve_program(p);
  EXPECT_NEAR(r.value, 1.5, 1e-12);
  EXPECT_TRUE(r.vertex_attained);
}

TEST(Solve, Infeasible) {
  PolyProgram p = toy_program();
  p.inequalities.push_back(coordinate_at_least(3, 1, 0.6, "y >= 0.6"));
  EXPECT_THROW(solve_program(p), ProgramError);
}

TEST(Solve, InvalidPrograms) {
  PolyProgram p = toy_program();
  p.objective = Polynomial::variables(3)[0].pow(4);
  EXPECT_THROW(solve_program(p), ProgramError);
  PolyProgram q = toy_program();
  q.lower = {0, 0};
  EXPECT_THROW(solve_program(q), ProgramError);
}

TEST(Named, Shapes) {
  auto f = named_program("fact_aaa");
  EXPECT_EQ(f.k(), 1);
  EXPECT_EQ(f.objective.degree(), 3);
  EXPECT_DOUBLE_EQ(f.lower[0], 0);
  EXPECT_DOUBLE_EQ(f.upper[0], 1);
  auto a4 = named_program("app_a4");
  EXPECT_EQ(a4.k(), 3);
  EXPECT_EQ(a4.equalities.size(), 1u);
  EXPECT_EQ(a4.inequalities.size(), 3u + 2u);
  EXPECT_THROW(named_program("nonsense"), ProgramError);
  EXPECT_THROW(named_program("fact_aaa:3"), ProgramError);
  EXPECT_THROW(named_program("b2n:2"), ProgramError);
  EXPECT_EQ(named_program("b2n:12").name, "b2n:12");
  for (const auto& n : battery_names()) EXPECT_NO_THROW(named_program(n).validate()) << n;
}

TEST(Named, SpotArgmaxes) {
  auto f = solve_program(named_program("fact_aaa"));
  EXPECT_NEAR(f.value, kRoot3Over18, 1e-9);
  EXPECT_NEAR(f.argmax[0], (3 - std::sqrt(3.0)) / 3, 1e-6);

  auto c2 = solve_program(named_program("perfect_case2"));
  EXPECT_NEAR(c2.argmax[0], (43 - std::sqrt(1255.0)) / 66, 1e-6);
  EXPECT_NEAR(c2.argmax[0], 0.11476, 1e-5);
  EXPECT_LT(c2.value, 28.0 / 243);

  auto n8 = solve_program(named_program("claim_n8"));
  EXPECT_NEAR(n8.argmax[0], 53.0 / 303, 1e-6);
  const double x = 53.0 / 303;
  EXPECT_NEAR(n8.value, 5.0 / 12 * x * (1 - x) * (1 - x) + 2.0 / 25 * std::pow(1 - x, 3), 1e-10);
  EXPECT_LT(n8.value, 0.095);
}

TEST(Named, PerfectCasesAgainstDirectMaximization) {
  const double top = 1 - 2 * std::sqrt(14.0) / 9;
  auto f1 = [](double x) { return kRoot3Over18 * std::pow(1 - x, 3) / (1 - 3 * x); };
  auto [x1, v1] = oracle::univariate_max(f1, 0, top);
  auto r1 = solve_program(named_program("perfect_case1"));
  EXPECT_NEAR(r1.value, v1, 1e-10);
  EXPECT_NEAR(r1.argmax[0], x1, 1e-6);
  EXPECT_LE(r1.value, 28.0 / 243 + 1e-9);

  auto f2 = [](double a) {
    const double u = 1 - 2 * a;
    return 0.1 * u * u * u + a * a * u + 6.0 / 7 * a * u * u;
  };
  auto [x2, v2] = oracle::univariate_max(f2, 0, 0.5);
  auto r2 = solve_program(named_program("perfect_case2"));
  EXPECT_NEAR(r2.value, v2, 1e-10);
  EXPECT_NEAR(x2, (43 - std::sqrt(1255.0)) / 66, 1e-6);
  EXPECT_LT(r2.value, 28.0 / 243);
}

TEST(Named, B2nMatchesGraphLagrangian) {
  for (int n : {7, 10, 14}) {
    auto r = solve_program(named_program("b2n:" + std::to_string(n)));
    EXPECT_NEAR(r.value, maximize(family(fam::B2{n - 2})).value, 1e-9) << n;
  }
}

TEST(Named, ResultInvariants) {
  for (const auto& n : battery_names()) {
    auto p = named_program(n);
    auto r = solve_program(p);
    EXPECT_LE(std::abs(r.value - p.evaluate(r.argmax)), 1e-10) << n;
    EXPECT_LE(r.oracle_value, r.value + 1e-6) << n;
    EXPECT_LE(r.kkt_residual, 1e-8) << n;
    for (const auto& c : p.equalities) EXPECT_NEAR(c.slack(r.argmax), 0, 1e-9) << n << " " << c.label;
    for (const auto& c : p.inequalities) EXPECT_GE(c.slack(r.argmax), -1e-9) << n << " " << c.label;
  }
}

TEST(Battery, AllPass) {
  auto report = verify_battery();
  for (const auto& e : report.entries) EXPECT_TRUE(e.pass) << e.name << " value " << e.result.value << " bound " << e.bound;
  for (const auto& c : report.checks) EXPECT_TRUE(c.pass) << c.name;
  EXPECT_TRUE(report.pass);
  EXPECT_GE(report.entries.size(), 15u);
  auto j = to_json(report);
  EXPECT_TRUE(j["pass"].get<bool>());
}

TEST(Battery, NegativeControlLoweredBound) {
  BatteryConfig cfg;
  cfg.names = {"fact_aaa"};
  cfg.bound_overrides["fact_aaa"] = kRoot3Over18 - 0.01;
  auto report = verify_battery(cfg);
  ASSERT_EQ(report.entries.size(), 1u);
  EXPECT_FALSE(report.entries[0].pass);
  EXPECT_FALSE(report.pass);
}

TEST(Battery, Identities) {
  for (const auto& name : {"h2", "y2_eq6", "y2_final"}) {
    auto e = run_battery_entry(name, BatteryConfig{});
    for (const auto& [label, r] : e.identities) EXPECT_LE(std::abs(r), 1e-6) << name << " " << label;
  }
}

TEST(Battery, OracleMeshRefinementIsStable) {
  for (const auto& name : {"fact_aaa", "claim_n8", "h2_e0", "app_a4"}) {
    auto p = named_program(name);
    auto coarse = program_oracle(p, 2e6, 16);
    auto fine = program_oracle(p, 2e6, 32);
    EXPECT_LE(std::abs(coarse.value - fine.value), 1e-5) << name;
  }
}

TEST(Battery, CubicHasNoRootInRanges) {
  EXPECT_TRUE(cubic_root_free(0.0, 1.0 / 9));
  EXPECT_TRUE(cubic_root_free(1.0 / 8, 1.0 / 5));
  // 2137b^3 - 882b^2 + 125b - 6 changes sign between 1/9 and 1/8
  auto f = [](double b) { return ((2137 * b - 882) * b + 125) * b - 6; };
  EXPECT_LT(f(1.0 / 9) * f(1.0 / 8), 0);
  EXPECT_FALSE(cubic_root_free(0.0, 1.0 / 5));
}

TEST(Bridge, GraphLagrangianBelowProgram) {
  for (const auto& name : {"b2n", "h1", "h2", "x3"}) {
    auto b = reduction_bridge(name);
    const double lam = maximize(b.graph).value;
    const double prog = solve_program(b.program).value;
    EXPECT_LE(lam, prog + 1e-7) << name;
  }
  EXPECT_THROW(reduction_bridge("nope"), ProgramError);
}
