#pragma once

#include <chrono>
#include <filesystem>
#include <fstream>
#include <future>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "hyperlag/battery.hpp"
#include "hyperlag/canonical.hpp"
#include "hyperlag/certify.hpp"
#include "hyperlag/enumerate.hpp"
#include "hyperlag/families.hpp"
#include "hyperlag/io.hpp"
#include "hyperlag/lagrangian.hpp"
#include "hyperlag/structure.hpp"
#include "hyperlag/suites.hpp"

namespace hyperlag::cli {

inline constexpr const char* kVersion = "1.0.0";

enum Exit : int { kOk = 0, kFailed = 1, kUsage = 2, kCapacity = 3 };

// Rounds to 15 significant digits so reports do not carry float noise.
inline double round15(double v) {
  if (!std::isfinite(v)) return v;
  std::ostringstream os;
  os << std::setprecision(15) << v;
  return std::stod(os.str());
}

inline nlohmann::json rounded(const std::vector<double>& v) {
  auto out = nlohmann::json::array();
  for (double x : v) out.push_back(round15(x));
  return out;
}

inline std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) h = (h ^ c) * 0x100000001b3ULL;
  return h;
}

struct Options {
  std::string family, file, out, cache, suite = "all";
  std::vector<std::string> forbid;
  std::uint64_t seed = 0;
  int restarts = SolverConfig{}.restarts;
  double tol = 1e-3;
  int mesh = 0;
  std::optional<double> certify;
  bool json = false;
  int n = 0;

  SolverConfig solver() const {
    SolverConfig c;
    c.seed = seed;
    c.restarts = restarts;
    c.validate();
    return c;
  }
  nlohmann::json snapshot() const {
    nlohmann::json j{{"seed", seed}, {"restarts", restarts}, {"tol", tol}};
    if (!family.empty()) j["family"] = family;
    if (!file.empty()) j["file"] = file;
    if (!forbid.empty()) j["forbid"] = forbid;
    if (mesh) j["mesh"] = mesh;
    if (certify) j["certify"] = *certify;
    return j;
  }
};

inline std::vector<Hypergraph> load_inputs(const Options& o) {
  if (o.family.empty() == o.file.empty()) throw InvalidInput("give exactly one of --family or --file");
  if (!o.family.empty()) return {parse_family(o.family)};
  std::ifstream is(o.file);
  if (!is) throw InvalidInput("cannot open " + o.file);
  auto graphs = parse_stream(is);
  if (graphs.empty()) throw InvalidInput(o.file + " holds no hypergraph");
  return graphs;
}

inline Hypergraph load_single(const Options& o) {
  auto graphs = load_inputs(o);
  if (graphs.size() != 1) throw InvalidInput("this command takes a single hypergraph, got " + std::to_string(graphs.size()));
  return graphs.front();
}

inline std::vector<Hypergraph> load_forbidden(const Options& o) {
  std::vector<Hypergraph> out;
  for (const auto& f : o.forbid) out.push_back(parse_family(f));
  return out;
}

// maximize, optionally through an on-disk cache keyed by the canonical form.
// With a cache the solve always runs on the canonical relabeling, so a hit and
// a miss give the same weights.
inline LagrangianResult solve_cached(const Hypergraph& g, const SolverConfig& cfg, const std::string& dir) {
  if (dir.empty()) return maximize(g, cfg);
  auto cf = canonical_form(g);
  if (!cf.exact) return maximize(g, cfg);
  const std::string cfg_key = std::to_string(cfg.seed) + "/" + std::to_string(cfg.restarts) + "/" +
                              std::to_string(cfg.max_iterations) + "/" + fmt_double(cfg.gradient_tolerance, 17) + "/" +
                              (cfg.symmetrize ? "s" : "-");
  std::ostringstream name;
  name << std::hex << fnv1a(cf.key) << "-" << fnv1a(cfg_key) << ".json";
  const auto path = std::filesystem::path(dir) / name.str();
  auto map_back = [&](const std::vector<double>& canon) {
    std::vector<double> w(canon.size());
    for (std::size_t v = 0; v < w.size(); ++v) w[v] = canon[static_cast<std::size_t>(cf.labeling[v]) - 1];
    return w;
  };
  if (std::ifstream is(path); is) {
    try {
      auto j = nlohmann::json::parse(is);
      if (j.at("key") == cf.key && j.at("config") == cfg_key) {
        LagrangianResult r;
        r.value = j.at("value");
        r.kkt_residual = j.at("kkt_residual");
        r.restarts_used = j.at("restarts_used");
        r.iterations = j.at("iterations");
        r.seed = cfg.seed;
        r.method = j.at("method") == to_string(Method::ClosedForm) ? Method::ClosedForm : Method::MultistartGradient;
        r.weights = WeightVector(map_back(j.at("weights").get<std::vector<double>>()));
        return r;
      }
    } catch (const std::exception&) {
      // unreadable entry: recompute and overwrite
    }
  }
  auto res = maximize(relabel(g, cf.labeling), cfg);
  std::filesystem::create_directories(dir);
  nlohmann::json j{{"key", cf.key},
                   {"config", cfg_key},
                   {"value", res.value},
                   {"kkt_residual", res.kkt_residual},
                   {"restarts_used", res.restarts_used},
                   {"iterations", res.iterations},
                   {"method", to_string(res.method)},
                   {"weights", res.weights.values()}};
  std::ofstream(path) << j.dump() << "\n";
  res.weights = WeightVector(map_back(res.weights.values()));
  return res;
}

struct Report {
  nlohmann::json result = nlohmann::json::object();
  std::ostringstream text;
  int exit = kOk;
};

inline void cmd_lambda(const Options& o, Report& rep) {
  auto graphs = load_inputs(o);
  const auto cfg = o.solver();
  std::vector<LagrangianResult> res(graphs.size());
  // Sweeps fan out over inputs; each solve is deterministic on its own.
  const std::size_t workers = std::max(1u, std::min(8u, std::thread::hardware_concurrency()));
  for (std::size_t start = 0; start < graphs.size(); start += workers) {
    std::vector<std::future<LagrangianResult>> jobs;
    for (std::size_t i = start; i < std::min(graphs.size(), start + workers); ++i)
      jobs.push_back(std::async(std::launch::async, [&, i] { return solve_cached(graphs[i], cfg, o.cache); }));
    for (std::size_t i = start; i < start + jobs.size(); ++i) res[i] = jobs[i - start].get();
  }
  auto& items = rep.result["graphs"] = nlohmann::json::array();
  double best = 0;
  for (std::size_t i = 0; i < graphs.size(); ++i) {
    const auto& g = graphs[i];
    const auto& r = res[i];
    best = std::max(best, r.value);
    nlohmann::json j{{"n", g.order()},
                     {"r", g.uniformity()},
                     {"edges", g.size()},
                     {"value", round15(r.value)},
                     {"kkt_residual", round15(r.kkt_residual)},
                     {"method", to_string(r.method)},
                     {"weights", rounded(r.weights.values())}};
    if (graphs.size() == 1) {
      rep.text << "lambda = " << fmt_double(r.value, 15) << "\n";
      rep.text << "method = " << to_string(r.method) << "\n";
      rep.text << "kkt_residual = " << fmt_double(r.kkt_residual, 3) << "\n";
      rep.text << "weights =";
      for (double w : r.weights.values()) rep.text << " " << fmt_double(w, 15);
      rep.text << "\n";
    } else {
      rep.text << "graph " << i + 1 << ": n=" << g.order() << " edges=" << g.size()
               << " lambda=" << fmt_double(r.value, 15) << " kkt=" << fmt_double(r.kkt_residual, 3) << "\n";
    }
    if (o.mesh) {
      auto grid = grid_search(g, o.mesh);
      j["grid_oracle"] = round15(grid.value);
      rep.text << "grid_oracle(mesh " << o.mesh << ") = " << fmt_double(grid.value, 15) << "\n";
    }
    if (o.certify) {
      auto c = certify_upper_bound(g, *o.certify, o.tol);
      j["certificate"] = {{"bound", round15(c.bound)}, {"target", *o.certify}, {"tolerance", o.tol},
                          {"boxes", c.boxes_explored}, {"certified", c.success}, {"exhausted", c.exhausted}};
      rep.text << "certified upper bound = " << fmt_double(c.bound, 12) << " (target " << *o.certify << ", tol "
               << o.tol << ", " << c.boxes_explored << " boxes): " << (c.success ? "CERTIFIED" : "NOT CERTIFIED")
               << "\n";
      if (!c.success) rep.exit = kFailed;
    }
    items.push_back(std::move(j));
  }
  rep.result["max_value"] = round15(best);
  if (graphs.size() > 1) rep.text << "max lambda = " << fmt_double(best, 15) << " over " << graphs.size() << " graphs\n";
}

inline void cmd_free(const Options& o, Report& rep) {
  auto g = load_single(o);
  auto forbidden = load_forbidden(o);
  if (forbidden.empty()) throw InvalidInput("free needs at least one --forbid");
  bool free = true;
  for (std::size_t i = 0; i < forbidden.size(); ++i) {
    if (forbidden[i].uniformity() != g.uniformity()) throw InvalidInput("forbidden graph " + o.forbid[i] + " has a different uniformity");
    if (auto emb = contains_subgraph(g, forbidden[i])) {
      free = false;
      nlohmann::json w{{"forbidden", o.forbid[i]}, {"image", emb->image}};
      rep.result["witness"] = w;
      rep.text << "NOT FREE: contains " << o.forbid[i] << "\nwitness:";
      for (Vertex h = 1; h <= forbidden[i].order(); ++h) rep.text << " " << h << "->" << emb->at(h);
      rep.text << "\nedges:";
      for (const auto& e : forbidden[i].edges()) {
        Edge img;
        for (Vertex v : e) img.push_back(emb->at(v));
        std::sort(img.begin(), img.end());
        rep.text << " " << to_string(img);
      }
      rep.text << "\n";
      break;
    }
  }
  rep.result["free"] = free;
  if (free) rep.text << "FREE\n";
}

inline void cmd_verify(const Options& o, Report& rep) {
  static const std::vector<std::string> all = {"lagrangian", "motzkin-straus", "colex", "battery"};
  std::vector<std::string> suites = o.suite == "all" ? all : std::vector<std::string>{o.suite};
  const auto cfg = o.solver();
  bool pass = true;
  for (const auto& name : suites) {
    SuiteResult s;
    if (name == "lagrangian") s = lagrangian_suite(cfg);
    else if (name == "motzkin-straus") s = motzkin_straus_suite(o.seed, 200, 7, cfg);
    else if (name == "colex") s = colex_suite(cfg);
    else if (name == "battery") {
      BatteryConfig bc;
      bc.program.seed = o.seed;
      s = battery_suite(bc);
    } else {
      throw InvalidInput("unknown suite " + name);
    }
    rep.text << "[" << name << "] " << (s.pass ? "PASS" : "FAIL") << "\n";
    for (const auto& l : s.lines) rep.text << "  " << l << "\n";
    rep.result["suites"][name] = {{"pass", s.pass}, {"data", s.data}};
    pass = pass && s.pass;
  }
  rep.result["pass"] = pass;
  if (!pass) rep.exit = kFailed;
}

inline void cmd_enumerate(const Options& o, Report& rep) {
  auto forbidden = load_forbidden(o);
  std::vector<Hypergraph> graphs = enumerate_free(o.n, forbidden);
  std::ostringstream stream;
  write_stream(stream, graphs);
  if (!o.out.empty()) {
    std::ofstream os(o.out);
    if (!os) throw InvalidInput("cannot write " + o.out);
    os << stream.str();
  }
  rep.result["n"] = o.n;
  rep.result["forbid"] = o.forbid;
  rep.result["classes"] = graphs.size();
  rep.text << graphs.size() << " isomorphism classes on " << o.n << " vertices";
  if (!o.forbid.empty()) {
    rep.text << " avoiding";
    for (const auto& f : o.forbid) rep.text << " " << f;
  }
  rep.text << "\n";
  if (o.out.empty()) rep.text << stream.str();
}

inline void emit_graph(const Hypergraph& g, Report& rep) {
  rep.result["graph"] = to_json(g);
  rep.text << serialize(g);
}

inline void cmd_densify(const Options& o, Report& rep) {
  auto d = densify(load_single(o), o.solver());
  emit_graph(d, rep);
}

inline void cmd_extend(const Options& o, Report& rep) { emit_graph(extension(load_single(o)), rep); }

// key=value lines; '#' starts a comment.
inline std::vector<std::pair<std::string, std::string>> read_config(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw InvalidInput("cannot open config " + path);
  std::vector<std::pair<std::string, std::string>> out;
  std::size_t lineno = 0;
  for (std::string line; std::getline(is, line);) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      if (b == std::string::npos) return std::string();
      return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
    };
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError(lineno, "expected key=value in " + path);
    out.emplace_back(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return out;
}

// Entry point shared by the binary and the tests. Returns the exit code.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Hypergraph Lagrangian toolkit", "hyperlag"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1, 1);
  Options o;

  auto add_input = [&](CLI::App* sub) {
    sub->add_option("--family", o.family, "family spec such as K:6:3, B2:28, H2:9:5,6,7 or K4e+edge");
    sub->add_option("--file", o.file, "hypergraph file in the text format");
  };
  auto add_solver = [&](CLI::App* sub) {
    sub->add_option("--seed", o.seed, "master seed");
    sub->add_option("--restarts", o.restarts, "multistart restarts")->check(CLI::PositiveNumber);
  };
  auto add_common = [&](CLI::App* sub) {
    sub->add_flag("--json", o.json, "print the JSON report");
    sub->add_option("--out", o.out, "write output to this file");
  };

  auto* lambda = app.add_subcommand("lambda", "maximize the Lagrangian");
  add_input(lambda);
  add_solver(lambda);
  add_common(lambda);
  lambda->add_option("--tol", o.tol, "certification tolerance")->check(CLI::PositiveNumber);
  lambda->add_option("--mesh", o.mesh, "also run the grid oracle with this mesh")->check(CLI::PositiveNumber);
  lambda->add_option("--certify", o.certify, "certify lambda <= TARGET + tol");
  lambda->add_option("--cache", o.cache, "results cache directory");

  auto* free = app.add_subcommand("free", "test F-freeness");
  add_input(free);
  add_common(free);
  free->add_option("--forbid", o.forbid, "forbidden family specs")->expected(1, -1);
  add_solver(free);

  auto* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("--suite", o.suite)->check(CLI::IsMember({"battery", "lagrangian", "motzkin-straus", "colex", "all"}));
  add_solver(verify);
  add_common(verify);

  auto* enumerate = app.add_subcommand("enumerate", "list F-free 3-graphs on n vertices up to isomorphism");
  enumerate->add_option("n", o.n, "vertex count")->required();
  enumerate->add_option("--forbid", o.forbid, "forbidden family specs")->expected(1, -1);
  enumerate->add_flag("--json", o.json, "print the JSON report");
  enumerate->add_option("--out", o.out, "write the graphs to this file");
  add_solver(enumerate);

  auto* dens = app.add_subcommand("densify", "remove edges while lambda is unchanged");
  add_input(dens);
  add_solver(dens);
  add_common(dens);

  auto* ext = app.add_subcommand("extend", "extension covering every pair");
  add_input(ext);
  add_common(ext);

  // --config FILE may appear anywhere; its key=value lines fill options of the
  // chosen subcommand that were not given as flags.
  std::vector<std::string> rest;
  std::vector<std::pair<std::string, std::string>> config;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" || args[i].rfind("--config=", 0) == 0) {
      std::string path;
      if (args[i] == "--config") {
        if (i + 1 == args.size()) {
          err << "error: --config needs a file\n";
          return kUsage;
        }
        path = args[++i];
      } else {
        path = args[i].substr(9);
      }
      try {
        config = read_config(path);
      } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
      }
    } else {
      rest.push_back(args[i]);
    }
  }
  std::vector<std::string> rev(rest.rbegin(), rest.rend());
  try {
    app.parse(rev);
    for (auto* sub : app.get_subcommands()) {
      for (const auto& [key, value] : config) {
        CLI::Option* opt = nullptr;
        try {
          opt = sub->get_option("--" + key);
        } catch (const CLI::OptionNotFound&) {
          throw CLI::ConfigError("unknown config key '" + key + "' for " + sub->get_name());
        }
        if (opt->count() == 0) {
          opt->add_result(value);
          opt->run_callback();
        }
      }
    }
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  const auto t0 = std::chrono::steady_clock::now();
  Report rep;
  std::string command;
  try {
    if (lambda->parsed()) command = "lambda", cmd_lambda(o, rep);
    else if (free->parsed()) command = "free", cmd_free(o, rep);
    else if (verify->parsed()) command = "verify", cmd_verify(o, rep);
    else if (enumerate->parsed()) command = "enumerate", cmd_enumerate(o, rep);
    else if (dens->parsed()) command = "densify", cmd_densify(o, rep);
    else if (ext->parsed()) command = "extend", cmd_extend(o, rep);
  } catch (const CapacityError& e) {
    err << "capacity: " << e.what() << "\n";
    return kCapacity;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kFailed;
  }
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  std::string payload;
  if (o.json) {
    std::string echo;
    for (const auto& a : args) echo += (echo.empty() ? "" : " ") + a;
    nlohmann::json j{{"schema", 1},
                     {"command", echo},
                     {"config", o.snapshot()},
                     {"result", rep.result},
                     {"wall_time_s", wall},
                     {"versions", {{"hyperlag", kVersion}, {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." +
                                                                       std::to_string(EIGEN_MAJOR_VERSION) + "." +
                                                                       std::to_string(EIGEN_MINOR_VERSION)}}}};
    payload = j.dump(2) + "\n";
  } else {
    payload = rep.text.str();
  }
  if (!o.out.empty() && command != "enumerate") {
    std::ofstream os(o.out);
    if (!os) {
      err << "error: cannot write " << o.out << "\n";
      return kUsage;
    }
    os << payload;
  } else {
    out << payload;
  }
  return rep.exit;
}

inline int run(int argc, char** argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  return run(std::vector<std::string>(argv + 1, argv + argc), out, err);
}

}  // namespace hyperlag::cli
