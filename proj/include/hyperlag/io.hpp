#pragma once

#include <istream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "hyperlag/hypergraph.hpp"

namespace hyperlag {

// "n r" header, then one edge per line.
inline std::string serialize(const Hypergraph& g) {
  std::ostringstream os;
  os << g.order() << ' ' << g.uniformity() << '\n';
  for (const auto& e : g.edges()) {
    for (std::size_t i = 0; i < e.size(); ++i) os << (i ? " " : "") << e[i];
    os << '\n';
  }
  return os.str();
}

namespace detail {

inline std::vector<long long> parse_ints(const std::string& line, std::size_t lineno) {
  std::istringstream is(line);
  std::vector<long long> out;
  std::string tok;
  while (is >> tok) {
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(tok, &used);
    } catch (const std::exception&) {
      throw ParseError(lineno, "'" + tok + "' is not an integer");
    }
    if (used != tok.size()) throw ParseError(lineno, "'" + tok + "' is not an integer");
    out.push_back(v);
  }
  return out;
}

inline bool blank_or_comment(const std::string& line) {
  auto pos = line.find_first_not_of(" \t\r");
  return pos == std::string::npos || line[pos] == '#';
}

struct GraphBlock {
  std::size_t header_line = 0;
  std::vector<std::pair<std::size_t, std::string>> lines;  // (line number, text)
};

inline Hypergraph parse_block(const GraphBlock& b) {
  auto head = parse_ints(b.lines.front().second, b.lines.front().first);
  if (head.size() != 2) throw ParseError(b.lines.front().first, "header must be 'n r'");
  if (head[0] < 0 || head[1] < 1) throw ParseError(b.lines.front().first, "header needs n >= 0 and r >= 1");
  const int n = static_cast<int>(head[0]), r = static_cast<int>(head[1]);
  std::vector<Edge> edges;
  for (std::size_t k = 1; k < b.lines.size(); ++k) {
    auto [lineno, text] = b.lines[k];
    auto vals = parse_ints(text, lineno);
    if (static_cast<int>(vals.size()) != r)
      throw ParseError(lineno, "edge has " + std::to_string(vals.size()) + " vertices, expected " + std::to_string(r));
    Edge e(vals.begin(), vals.end());
    try {
      make_hypergraph(n, r, {e});
    } catch (const InvalidInput& err) {
      throw ParseError(lineno, err.what());
    }
    edges.push_back(std::move(e));
  }
  return make_hypergraph(n, r, std::move(edges));
}

}  // namespace detail

// One hypergraph. '#' lines and blank lines are ignored.
inline Hypergraph parse(const std::string& text) {
  std::istringstream is(text);
  detail::GraphBlock block;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (detail::blank_or_comment(line)) continue;
    block.lines.emplace_back(lineno, line);
  }
  if (block.lines.empty()) throw ParseError(lineno + 1, "missing 'n r' header");
  return detail::parse_block(block);
}

// A stream of serialized hypergraphs separated by blank lines.
inline std::vector<Hypergraph> parse_stream(std::istream& is) {
  std::vector<Hypergraph> out;
  detail::GraphBlock block;
  std::string line;
  std::size_t lineno = 0;
  auto flush = [&] {
    if (!block.lines.empty()) out.push_back(detail::parse_block(block));
    block.lines.clear();
  };
  while (std::getline(is, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) {
      flush();
      continue;
    }
    if (detail::blank_or_comment(line)) continue;
    block.lines.emplace_back(lineno, line);
  }
  flush();
  return out;
}

inline void write_stream(std::ostream& os, const std::vector<Hypergraph>& graphs) {
  for (std::size_t i = 0; i < graphs.size(); ++i) os << (i ? "\n" : "") << serialize(graphs[i]);
}

inline nlohmann::json to_json(const Hypergraph& g) {
  return nlohmann::json{{"n", g.order()}, {"r", g.uniformity()}, {"edges", g.edges()}};
}

inline Hypergraph hypergraph_from_json(const nlohmann::json& j) {
  try {
    return make_hypergraph(j.at("n").get<int>(), j.at("r").get<int>(), j.at("edges").get<std::vector<Edge>>());
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("bad hypergraph JSON: ") + e.what());
  }
}

}  // namespace hyperlag
