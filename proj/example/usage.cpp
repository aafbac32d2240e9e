// Small tour of the library: build a graph, check free-ness, compute its
// Lagrangian, certify a bound, and solve one parametric program.
#include <iostream>

#include "hyperlag/battery.hpp"
#include "hyperlag/certify.hpp"
#include "hyperlag/families.hpp"
#include "hyperlag/io.hpp"
#include "hyperlag/lagrangian.hpp"
#include "hyperlag/structure.hpp"

int main() {
  using namespace hyperlag;
  auto g = family(fam::B2{6});
  std::cout << "B(2,6): " << g.order() << " vertices, " << g.edges().size() << " edges\n";
  std::cout << "K4^3 + e free: " << std::boolalpha << is_free(g, {k4e()}) << "\n";

  auto res = maximize(g);
  std::cout.precision(12);
  std::cout << "lambda = " << res.value << " (kkt " << res.kkt_residual << ")\n";

  auto cert = certify_upper_bound(g, constants::kSqrt3Over18, 1e-3);
  std::cout << "certified <= sqrt(3)/18: " << cert.success << " (bound " << cert.bound << ")" << "\n";

  auto p = solve_program(named_program("fact_aaa"));
  std::cout << "fact_aaa: " << p.value << " at x = " << p.argmax[0] << "\n";
  return 0;
}
