#pragma once

#include <charconv>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "hyperlag/hypergraph.hpp"

namespace hyperlag {

namespace fam {
struct CompleteKtr { int t; int r; };
struct CompleteMinus { int t; int r; };  // K_t^r minus its lexicographically last edge
struct B2 { int s; };                    // B(2,s) on s+2 vertices: 3-sets meeting {1,2}
struct X { int i; };                     // i copies of K_4^3 sharing {1,2}
struct Y { int i; };                     // i copies of K_4^3 sharing {1,2,3}
struct S2t { int t; };                   // edges {1,2,u} for u = 3..t+2
struct Mtr { int t; int r; };            // t disjoint r-edges
struct H1 { int n; };
struct H2 { int n; VertexSet d; };       // empty d means {5,...,n}
struct Colex { int r; std::uint64_t m; };
struct SingleEdge { int r; };
}  // namespace fam

using FamilySpec = std::variant<fam::CompleteKtr, fam::CompleteMinus, fam::B2, fam::X, fam::Y, fam::S2t, fam::Mtr,
                                fam::H1, fam::H2, fam::Colex, fam::SingleEdge>;

namespace detail {

inline void require(bool ok, const std::string& msg) {
  if (!ok) throw InvalidInput(msg);
}

inline std::vector<Edge> b2_edges(int n) {
  std::vector<Edge> edges;
  for_each_subset(range_set(1, n), 3, [&](const std::vector<Vertex>& e) {
    if (e[0] <= 2) edges.push_back(e);
  });
  return edges;
}

inline void add_k4(std::vector<Edge>& edges, Vertex a, Vertex b, Vertex c, Vertex d) {
  for_each_subset({a, b, c, d}, 3, [&](const std::vector<Vertex>& e) { edges.push_back(e); });
}

inline bool in(const VertexSet& s, Vertex v) { return std::find(s.begin(), s.end(), v) != s.end(); }

}  // namespace detail

inline Hypergraph family(const FamilySpec& spec) {
  using detail::require;
  return std::visit(
      [](const auto& f) -> Hypergraph {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, fam::CompleteKtr>) {
          require(f.r >= 2 && f.t >= 0, "K:t:r needs r >= 2 and t >= 0");
          return complete_hypergraph(f.t, f.r);
        } else if constexpr (std::is_same_v<T, fam::CompleteMinus>) {
          require(f.r >= 2 && f.t >= f.r, "K_t^{r-} needs t >= r >= 2");
          auto k = complete_hypergraph(f.t, f.r);
          return remove_edge(k, k.edges().back());
        } else if constexpr (std::is_same_v<T, fam::B2>) {
          require(f.s >= 1, "B2:s needs s >= 1");
          return make_hypergraph(f.s + 2, 3, detail::b2_edges(f.s + 2));
        } else if constexpr (std::is_same_v<T, fam::X>) {
          require(f.i >= 1, "X:i needs i >= 1");
          std::vector<Edge> edges;
          for (int j = 1; j <= f.i; ++j) detail::add_k4(edges, 1, 2, 2 * j + 1, 2 * j + 2);
          return make_hypergraph(2 * f.i + 2, 3, std::move(edges));
        } else if constexpr (std::is_same_v<T, fam::Y>) {
          require(f.i >= 1, "Y:i needs i >= 1");
          std::vector<Edge> edges;
          for (int j = 1; j <= f.i; ++j) detail::add_k4(edges, 1, 2, 3, j + 3);
          return make_hypergraph(f.i + 3, 3, std::move(edges));
        } else if constexpr (std::is_same_v<T, fam::S2t>) {
          require(f.t >= 1, "S2:t needs t >= 1");
          std::vector<Edge> edges;
          for (int u = 3; u <= f.t + 2; ++u) edges.push_back({1, 2, u});
          return make_hypergraph(f.t + 2, 3, std::move(edges));
        } else if constexpr (std::is_same_v<T, fam::Mtr>) {
          require(f.t >= 0 && f.r >= 2, "M:t:r needs t >= 0 and r >= 2");
          std::vector<Edge> edges;
          for (int k = 0; k < f.t; ++k) {
            Edge e;
            for (int v = 1; v <= f.r; ++v) e.push_back(k * f.r + v);
            edges.push_back(std::move(e));
          }
          return make_hypergraph(f.t * f.r, f.r, std::move(edges));
        } else if constexpr (std::is_same_v<T, fam::H1>) {
          require(f.n >= 6, "H1:n needs n >= 6");
          std::vector<Edge> edges;
          for (auto& e : detail::b2_edges(f.n))
            if (!(e[0] == 2 && e[1] > 6)) edges.push_back(e);
          edges.push_back({3, 4, 5});
          edges.push_back({3, 4, 6});
          return make_hypergraph(f.n, 3, std::move(edges));
        } else if constexpr (std::is_same_v<T, fam::H2>) {
          VertexSet d = f.d.empty() ? range_set(5, f.n) : f.d;
          std::sort(d.begin(), d.end());
          d.erase(std::unique(d.begin(), d.end()), d.end());
          require(d.size() >= 2, "H2 needs |D| >= 2");
          for (Vertex v : d) require(v >= 5 && v <= f.n, "H2 needs D inside {5,...,n}");
          std::vector<Edge> edges;
          for (auto& e : detail::b2_edges(f.n))
            if (!(e[0] == 2 && detail::in(d, e[1]) && detail::in(d, e[2]))) edges.push_back(e);
          for (Vertex v : d) edges.push_back({3, 4, v});
          return make_hypergraph(f.n, 3, std::move(edges));
        } else if constexpr (std::is_same_v<T, fam::Colex>) {
          require(f.r >= 2, "C:r:m needs r >= 2");
          return colex_first(f.r, f.m);
        } else {
          require(f.r >= 2, "E:r needs r >= 2");
          Edge e;
          for (int v = 1; v <= f.r; ++v) e.push_back(v);
          return make_hypergraph(f.r, f.r, {e});
        }
      },
      spec);
}

// K_4^3 plus a disjoint edge: {123,124,134,234,567}.
inline Hypergraph k4e() { return disjoint_union(complete_hypergraph(4, 3), family(fam::SingleEdge{3})); }

namespace detail {

inline std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    auto pos = s.find(sep, start);
    parts.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) return parts;
    start = pos + 1;
  }
}

inline long long parse_int(std::string_view s, std::string_view ctx) {
  long long v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size() || s.empty())
    throw InvalidInput("bad integer '" + std::string(s) + "' in family spec '" + std::string(ctx) + "'");
  return v;
}

}  // namespace detail

// NAME[:p[:p]] with NAME in K, Km, B2, X, Y, S2, M, H1, H2, C, E.
inline FamilySpec parse_family_spec(std::string_view text) {
  auto parts = detail::split(text, ':');
  const std::string_view name = parts[0];
  auto arg = [&](std::size_t i) -> int {
    if (i >= parts.size()) throw InvalidInput("family spec '" + std::string(text) + "' is missing a parameter");
    return static_cast<int>(detail::parse_int(parts[i], text));
  };
  auto arity = [&](std::size_t lo, std::size_t hi) {
    if (parts.size() < lo + 1 || parts.size() > hi + 1)
      throw InvalidInput("family spec '" + std::string(text) + "' has the wrong number of parameters");
  };
  if (name == "K") { arity(2, 2); return fam::CompleteKtr{arg(1), arg(2)}; }
  if (name == "Km") { arity(2, 2); return fam::CompleteMinus{arg(1), arg(2)}; }
  if (name == "B2") { arity(1, 1); return fam::B2{arg(1)}; }
  if (name == "X") { arity(1, 1); return fam::X{arg(1)}; }
  if (name == "Y") { arity(1, 1); return fam::Y{arg(1)}; }
  if (name == "S2") { arity(1, 1); return fam::S2t{arg(1)}; }
  if (name == "M") { arity(2, 2); return fam::Mtr{arg(1), arg(2)}; }
  if (name == "H1") { arity(1, 1); return fam::H1{arg(1)}; }
  if (name == "H2") {
    arity(1, 2);
    fam::H2 h{arg(1), {}};
    if (parts.size() == 3)
      for (auto d : detail::split(parts[2], ',')) h.d.push_back(static_cast<Vertex>(detail::parse_int(d, text)));
    return h;
  }
  if (name == "C") {
    arity(2, 2);
    auto m = detail::parse_int(parts[2], text);
    if (m < 0) throw InvalidInput("C:r:m needs m >= 0");
    return fam::Colex{arg(1), static_cast<std::uint64_t>(m)};
  }
  if (name == "E") { arity(1, 1); return fam::SingleEdge{arg(1)}; }
  throw InvalidInput("unknown family '" + std::string(name) + "'");
}

// A '+'-separated list of terms joined by disjoint union. Besides the specs
// above, terms may be the aliases K4e (K_4^3 plus an edge), K5m (K_5^{3-})
// and edge (a single 3-edge).
inline Hypergraph parse_family(std::string_view text) {
  std::optional<Hypergraph> acc;
  for (auto term : detail::split(text, '+')) {
    Hypergraph g;
    if (term == "K4e") g = k4e();
    else if (term == "K5m") g = family(fam::CompleteMinus{5, 3});
    else if (term == "edge") g = family(fam::SingleEdge{3});
    else g = family(parse_family_spec(term));
    acc = acc ? disjoint_union(*acc, g) : g;
  }
  return *acc;
}

}  // namespace hyperlag
