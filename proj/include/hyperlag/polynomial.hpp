#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "hyperlag/errors.hpp"

namespace hyperlag {

inline constexpr int kMaxProgramVariables = 7;

// Sparse real polynomial in at most kMaxProgramVariables variables.
class Polynomial {
 public:
  using Exponents = std::array<std::uint8_t, kMaxProgramVariables>;

  explicit Polynomial(int vars = 0) : k_(vars) {
    if (vars < 0 || vars > kMaxProgramVariables)
      throw ProgramError("polynomials support 0.." + std::to_string(kMaxProgramVariables) + " variables");
  }

  static Polynomial constant(int vars, double c) {
    Polynomial p(vars);
    p.add_term(Exponents{}, c);
    return p;
  }
  static Polynomial variable(int vars, int i) {
    Polynomial p(vars);
    if (i < 0 || i >= vars) throw ProgramError("variable index out of range");
    Exponents e{};
    e[static_cast<std::size_t>(i)] = 1;
    p.add_term(e, 1.0);
    return p;
  }
  // All variables of a k-variable ring, for writing objectives by hand.
  static std::vector<Polynomial> variables(int vars) {
    std::vector<Polynomial> out;
    for (int i = 0; i < vars; ++i) out.push_back(variable(vars, i));
    return out;
  }

  int vars() const { return k_; }
  const std::map<Exponents, double>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  int degree() const {
    int d = 0;
    for (const auto& [e, c] : terms_) {
      int s = 0;
      for (auto x : e) s += x;
      d = std::max(d, s);
    }
    return d;
  }

  void add_term(const Exponents& e, double c) {
    if (c == 0) return;
    auto [it, fresh] = terms_.try_emplace(e, c);
    if (!fresh && (it->second += c) == 0) terms_.erase(it);
  }

  double operator()(std::span<const double> x) const {
    double s = 0;
    for (const auto& [e, c] : terms_) {
      double t = c;
      for (int i = 0; i < k_; ++i)
        for (int p = 0; p < e[static_cast<std::size_t>(i)]; ++p) t *= x[static_cast<std::size_t>(i)];
      s += t;
    }
    return s;
  }

  Polynomial derivative(int i) const {
    Polynomial d(k_);
    for (const auto& [e, c] : terms_) {
      auto p = e[static_cast<std::size_t>(i)];
      if (!p) continue;
      Exponents f = e;
      --f[static_cast<std::size_t>(i)];
      d.add_term(f, c * p);
    }
    return d;
  }

  friend Polynomial operator+(Polynomial a, const Polynomial& b) {
    check_ring(a, b);
    for (const auto& [e, c] : b.terms_) a.add_term(e, c);
    return a;
  }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) {
    check_ring(a, b);
    for (const auto& [e, c] : b.terms_) a.add_term(e, -c);
    return a;
  }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    check_ring(a, b);
    Polynomial p(a.k_);
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) {
        Exponents e{};
        for (std::size_t i = 0; i < e.size(); ++i) e[i] = static_cast<std::uint8_t>(ea[i] + eb[i]);
        p.add_term(e, ca * cb);
      }
    return p;
  }
  friend Polynomial operator*(double s, Polynomial a) {
    if (s == 0) return Polynomial(a.k_);
    for (auto& [e, c] : a.terms_) c *= s;
    return a;
  }
  friend Polynomial operator*(const Polynomial& a, double s) { return s * a; }
  friend Polynomial operator/(const Polynomial& a, double s) { return (1.0 / s) * a; }
  friend Polynomial operator+(const Polynomial& a, double s) { return a + constant(a.k_, s); }
  friend Polynomial operator+(double s, const Polynomial& a) { return a + constant(a.k_, s); }
  friend Polynomial operator-(const Polynomial& a, double s) { return a + constant(a.k_, -s); }
  friend Polynomial operator-(double s, const Polynomial& a) { return constant(a.k_, s) - a; }
  friend Polynomial operator-(const Polynomial& a) { return -1.0 * a; }

  Polynomial pow(int e) const {
    Polynomial p = constant(k_, 1.0);
    for (int i = 0; i < e; ++i) p = p * *this;
    return p;
  }

  std::string to_string(const std::vector<std::string>& names = {}) const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    os.precision(12);
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      const auto& [e, c] = *it;
      os << (first ? (c < 0 ? "-" : "") : (c < 0 ? " - " : " + "));
      first = false;
      bool unit = true;
      for (auto x : e) unit = unit && x == 0;
      if (std::abs(c) != 1.0 || unit) os << std::abs(c);
      bool star = std::abs(c) != 1.0 || unit;
      for (int i = 0; i < k_; ++i) {
        auto p = e[static_cast<std::size_t>(i)];
        if (!p) continue;
        os << (star ? "*" : "") << (i < static_cast<int>(names.size()) ? names[static_cast<std::size_t>(i)] : "x" + std::to_string(i + 1));
        if (p > 1) os << "^" << static_cast<int>(p);
        star = true;
      }
    }
    return os.str();
  }

 private:
  static void check_ring(const Polynomial& a, const Polynomial& b) {
    if (a.k_ != b.k_) throw ProgramError("polynomials over different variable counts");
  }

  int k_;
  std::map<Exponents, double> terms_;
};

}  // namespace hyperlag
