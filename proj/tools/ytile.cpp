// Command-line front end: instance generation, solvers, the fractional LP and audit suites.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "ytile/audit.hpp"
#include "ytile/fractional.hpp"
#include "ytile/hypergraph.hpp"
#include "ytile/io.hpp"
#include "ytile/tiling.hpp"

namespace {

using nlohmann::json;
using namespace ytile;

struct Options {
  std::string family;
  std::size_t n = 0, k = 3, b = 2, s = 0, t = 1, factor = 2, radius = 1;
  double p = 0.5;
  std::optional<std::uint64_t> seed;
  std::string pattern = "y:3,2";
  std::uint64_t budget = kDefaultNodeBudget;
  std::string mode = "exact";
  std::vector<std::string> suites;
  std::string out;
  std::string in;
  std::string format;
  bool minus = false;
  bool timing = false;
  std::size_t samples = kLinearizationSamples;
};

Pattern parse_pattern(const std::string& text) {
  unsigned k = 0, b = 0;
  char tail = 0;
  if (std::sscanf(text.c_str(), "y:%u,%u%c", &k, &b, &tail) != 2) {
    throw std::invalid_argument("pattern must look like y:K,B");
  }
  return Pattern(k, b);
}

std::string hex(std::uint64_t x) {
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << x;
  return os.str();
}

json digest(const Hypergraph& h) {
  return {{"n", h.num_vertices()}, {"k", h.uniformity()}, {"m", h.num_edges()}, {"hash", hex(canonical_hash(h))}};
}

json seed_json(const Options& o) { return o.seed ? json(*o.seed) : json(nullptr); }

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

std::string csv_value(const json& j) { return csv_field(j.is_string() ? j.get<std::string>() : j.dump()); }

void emit(const Options& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(o.out, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + o.out);
  f << text;
}

std::string render_json(const json& report) { return report.dump(2) + "\n"; }

int cmd_gen(const Options& o) {
  Hypergraph h;
  json params = {{"family", o.family}};
  if (o.family == "complete") {
    h = complete(o.n, o.k);
    params.update({{"n", o.n}, {"k", o.k}});
  } else if (o.family == "clique") {
    h = clique_plus_isolated(o.n, o.s, o.k, o.b);
    params.update({{"n", o.n}, {"s", o.s}, {"k", o.k}, {"b", o.b}});
  } else if (o.family == "cover") {
    h = cover_construction(o.n, o.s, o.k);
    params.update({{"n", o.n}, {"s", o.s}, {"k", o.k}});
  } else if (o.family == "kpartite") {
    h = kpartite_extremal(o.k, o.n, o.t, o.minus);
    params.update({{"k", o.k}, {"n", o.n}, {"t", o.t}, {"minus", o.minus}});
  } else if (o.family == "random") {
    if (!o.seed) throw std::invalid_argument("--seed is required for the random family");
    h = random_hypergraph(o.n, o.k, o.p, *o.seed);
    params.update({{"n", o.n}, {"k", o.k}, {"p", o.p}});
  } else if (o.family == "blowup") {
    if (o.in.empty()) throw std::invalid_argument("--in is required for the blowup family");
    h = blow_up(read_hypergraph(o.in), o.factor).graph;
    params.update({{"factor", o.factor}, {"source", digest(read_hypergraph(o.in))}});
  } else {
    throw std::invalid_argument("unknown family: " + o.family);
  }
  GraphFormat fmt = o.out.empty() ? GraphFormat::hg : format_for_path(o.out);
  if (o.format == "json") fmt = GraphFormat::json;
  if (o.format == "hg") fmt = GraphFormat::hg;
  if (o.format == "csv") throw std::invalid_argument("gen writes hg or json only");
  if (o.out.empty()) {
    std::cout << (fmt == GraphFormat::json ? to_json(h).dump() + "\n" : to_hg(h));
    return 0;
  }
  write_hypergraph(h, o.out, fmt);
  const json report = {{"command", "gen"}, {"args", params}, {"seed", seed_json(o)}, {"instance", digest(h)}};
  std::cout << render_json(report);
  return 0;
}

Hypergraph load_input(const Options& o) {
  if (o.in.empty()) throw std::invalid_argument("--in is required");
  return read_hypergraph(o.in);
}

int cmd_solve(const Options& o) {
  const Hypergraph h = load_input(o);
  const Pattern pattern = parse_pattern(o.pattern);
  json result;
  bool optimal = false;
  Tiling tiling;
  if (o.mode == "exact") {
    const auto r = max_tiling_exact(h, pattern, o.budget);
    result = to_json(r, pattern);
    optimal = r.optimal;
    tiling = r.tiling;
  } else if (o.mode == "greedy") {
    tiling = greedy_tiling(h, pattern);
    result = to_json(TilingResult{tiling, false, 0}, pattern);
  } else if (o.mode == "local") {
    tiling = local_search_improve(h, pattern, greedy_tiling(h, pattern), o.radius);
    result = to_json(TilingResult{tiling, false, 0}, pattern);
    result["radius"] = o.radius;
  } else if (o.mode == "mixed") {
    const auto r = max_mixed_tiling_exact(h, pattern, o.budget);
    result = to_json(r, pattern);
    optimal = r.optimal;
    if (auto bad = verify_tiling(h, pattern, r.tiling)) throw std::logic_error("solver produced " + bad->what);
  } else {
    throw std::invalid_argument("unknown mode: " + o.mode);
  }
  if (o.mode != "mixed") {
    if (auto bad = verify_tiling(h, pattern, tiling)) throw std::logic_error("solver produced " + bad->what);
  }
  result["verified"] = true;
  const json report = {{"command", "solve"},
                       {"args", {{"mode", o.mode}, {"pattern", o.pattern}, {"budget", o.budget}}},
                       {"seed", seed_json(o)},
                       {"instance", digest(h)},
                       {"result", result},
                       {"optimal", optimal}};
  if (o.format == "csv") {
    std::string text = "kind,first,second\n";
    for (const auto& c : result["copies"]) text += "copy," + c[0].dump() + "," + c[1].dump() + "\n";
    if (result.contains("singles"))
      for (const auto& e : result["singles"]) text += "single," + e.dump() + ",\n";
    emit(o, text);
  } else {
    emit(o, render_json(report));
  }
  return 0;
}

int cmd_lp(const Options& o) {
  const Hypergraph h = load_input(o);
  if (h.uniformity() != 3) throw std::invalid_argument("the fractional LP is defined for 3-graphs only");
  const FractionalLpResult lp = lp_max_weight(h);
  const FractionalReport check = verify_fractional(h, lp.tiling);
  json result = {{"optimum", rational_string(lp.optimum)},
                 {"certificate", to_json(lp.tiling)},
                 {"verified", check.ok},
                 {"pivots", lp.solution.pivots},
                 {"at_most_n", lp.optimum <= mpq_class(h.num_vertices())}};
  const auto exact = max_tiling_exact(h, Pattern::y32(), o.budget);
  if (exact.optimal) {
    result["exact_tiling_size"] = exact.tiling.size();
    result["at_least_4_exact"] = lp.optimum >= mpq_class(4 * exact.tiling.size());
  } else {
    result["exact_tiling_size"] = nullptr;
  }
  const json report = {{"command", "lp"},
                       {"args", {{"budget", o.budget}}},
                       {"seed", seed_json(o)},
                       {"instance", digest(h)},
                       {"result", result},
                       {"optimal", true}};
  if (o.format == "csv") {
    std::string text = "vertex,edge,value\n";
    for (const auto& e : result["certificate"]["entries"]) {
      text += e[0].dump() + "," + e[1].dump() + "," + e[2].get<std::string>() + "\n";
    }
    emit(o, text);
  } else {
    emit(o, render_json(report));
  }
  return check.ok ? 0 : 1;
}

int cmd_audit(const Options& o) {
  std::vector<std::string> suites = o.suites;
  if (suites.empty()) suites = audit_suite_names();
  json results = json::array();
  bool pass = true;
  std::vector<AuditSuiteResult> raw;
  for (const auto& s : suites) {
    if (audit_suite_needs_seed(s) && !o.seed) throw std::invalid_argument("--seed is required for suite " + s);
    raw.push_back(run_audit_suite(s, o.seed, o.samples));
    pass = pass && raw.back().pass();
    results.push_back(to_json(raw.back()));
  }
  const json report = {{"command", "audit"},
                       {"args", {{"suites", suites}, {"samples", o.samples}}},
                       {"seed", seed_json(o)},
                       {"result", results},
                       {"pass", pass}};
  if (o.format == "csv") {
    std::string text = "suite,check,computed,expected,pass,informational\n";
    for (const auto& r : raw)
      for (const auto& c : r.checks) {
        text += csv_field(r.suite) + "," + csv_field(c.name) + "," + csv_value(c.computed) + "," +
                csv_value(c.expected) + "," + (c.pass ? "true" : "false") + "," +
                (c.informational ? "true" : "false") + "\n";
      }
    emit(o, text);
  } else {
    emit(o, render_json(report));
  }
  return pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Y-tiling solvers, fractional LP and audit suites for k-uniform hypergraphs"};
  app.require_subcommand(1);
  Options o;
  std::uint64_t seed_value = 0;

  auto add_seed = [&](CLI::App* cmd) { return cmd->add_option("--seed", seed_value, "RNG seed"); };
  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--out", o.out, "Output path (default: stdout)");
    cmd->add_option("--format", o.format, "hg | json | csv")->check(CLI::IsMember({"hg", "json", "csv"}));
    cmd->add_flag("--timing", o.timing, "Print wall time to stderr");
  };

  auto* gen = app.add_subcommand("gen", "Generate an instance");
  gen->add_option("--family", o.family, "complete | clique | cover | kpartite | random | blowup")->required();
  gen->add_option("--n", o.n, "Vertices (per class for kpartite)");
  gen->add_option("--k", o.k, "Uniformity");
  gen->add_option("--b", o.b, "Pattern overlap");
  gen->add_option("--s", o.s, "Tiling size parameter");
  gen->add_option("--t", o.t, "Small part size (kpartite)");
  gen->add_flag("--minus", o.minus, "Drop the first edge (kpartite)");
  gen->add_option("--p", o.p, "Edge probability (random)");
  gen->add_option("--in", o.in, "Source instance (blowup)");
  gen->add_option("--factor", o.factor, "Blow-up factor");
  auto* gen_seed = add_seed(gen);
  add_common(gen);

  auto* solve = app.add_subcommand("solve", "Run a tiling solver");
  solve->add_option("--in", o.in, "Instance file (.hg or .json)")->required();
  solve->add_option("--mode", o.mode, "exact | greedy | local | mixed")
      ->check(CLI::IsMember({"exact", "greedy", "local", "mixed"}));
  solve->add_option("--pattern", o.pattern, "Pattern as y:K,B");
  solve->add_option("--budget", o.budget, "Node budget");
  solve->add_option("--radius", o.radius, "Swap radius for local search");
  auto* solve_seed = add_seed(solve);
  add_common(solve);

  auto* lp = app.add_subcommand("lp", "Solve the fractional hom(Y)-tiling LP");
  lp->add_option("--in", o.in, "Instance file (.hg or .json)")->required();
  lp->add_option("--budget", o.budget, "Node budget for the exact comparison");
  auto* lp_seed = add_seed(lp);
  add_common(lp);

  auto* audit = app.add_subcommand("audit", "Run audit suites");
  audit->add_option("--suite", o.suites, "f0 | f11f1 | frfu | constructions | linearization (repeatable)")
      ->delimiter(',')
      ->check(CLI::IsMember(audit_suite_names()));
  audit->add_option("--samples", o.samples, "Samples for the linearization suite");
  auto* audit_seed = add_seed(audit);
  add_common(audit);

  CLI11_PARSE(app, argc, argv);
  for (auto* opt : {gen_seed, solve_seed, lp_seed, audit_seed})
    if (opt->count() > 0) o.seed = seed_value;

  const auto start = std::chrono::steady_clock::now();
  int code = 0;
  try {
    if (gen->parsed()) code = cmd_gen(o);
    if (solve->parsed()) code = cmd_solve(o);
    if (lp->parsed()) code = cmd_lp(o);
    if (audit->parsed()) code = cmd_audit(o);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  if (o.timing) {
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);
    std::cerr << "elapsed_ms: " << ms.count() << "\n";
  }
  return code;
}
