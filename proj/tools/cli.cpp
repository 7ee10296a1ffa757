#include "cli.hpp"

#include "pardyn/cp_algebra.hpp"
#include "pardyn/dynamics.hpp"
#include "pardyn/error.hpp"
#include "pardyn/generators.hpp"
#include "pardyn/json_io.hpp"
#include "pardyn/measures.hpp"
#include "pardyn/orbit_breaking.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <functional>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <utility>
#include <vector>

namespace pardyn::cli {

namespace {

using io::Json;

struct Options {
  std::string spec;
  std::string input;
  std::string rank;
  std::optional<std::uint32_t> conformal;
  bool invariant = false;
  std::size_t horizon = 0;
  std::string break_set;
  std::string format = "table";
  std::size_t max_size = 5;
  bool global = false;
  std::string target;
};

struct Loaded {
  FiniteSystem system;
  std::optional<RankFunction> rank;
};

std::uint64_t env_seed() {
  const char* raw = std::getenv("PARDYN_SEED");
  if (raw == nullptr || *raw == '\0') {
    return 0;
  }
  std::uint64_t seed = 0;
  const std::string_view s(raw);
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), seed);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw ValidationError("PARDYN_SEED must be a non-negative integer, got '" + std::string(s) +
                          "'");
  }
  return seed;
}

Loaded load(const Options& o) {
  if (o.spec.empty() == o.input.empty()) {
    throw ValidationError("exactly one of --spec or --input is required");
  }
  if (!o.spec.empty()) {
    auto g = make(parse_spec(o.spec, env_seed()));
    return {std::move(g.system), std::move(g.rank)};
  }
  auto f = io::load_system(o.input);
  return {std::move(f.system), std::move(f.rank)};
}

// --rank wins over a rank carried by the input; otherwise rank 1.
RankFunction resolve_rank(const Options& o, const Loaded& in) {
  if (!o.rank.empty()) {
    std::uint32_t d = 0;
    const auto [ptr, ec] = std::from_chars(o.rank.data(), o.rank.data() + o.rank.size(), d);
    if (ec == std::errc() && ptr == o.rank.data() + o.rank.size()) {
      if (d == 0) {
        throw ValidationError("--rank must be at least 1");
      }
      return RankFunction::constant(in.system, d);
    }
    return io::rank_from_json(in.system, io::read_json_file(o.rank));
  }
  if (in.rank) {
    return *in.rank;
  }
  return RankFunction::constant(in.system, 1);
}

PointSet parse_break_set(const FiniteSystem& sys, const std::string& text) {
  PointSet y = make_point_set(sys.size());
  std::stringstream ss(text);
  std::string name;
  while (std::getline(ss, name, ',')) {
    if (!name.empty()) {
      y.set(sys.id_of(name));
    }
  }
  return y;
}

std::string join(const FiniteSystem& sys, const std::vector<PointId>& pts, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    out += (i == 0 ? "" : sep) + sys.label(pts[i]);
  }
  return out;
}

std::string measure_line(const FiniteSystem& sys, const Measure& mu) {
  std::string out = "(";
  for (PointId x = 0; x < sys.size(); ++x) {
    out += (x == 0 ? "" : ", ") + to_string(mu.weights[x]);
  }
  return out + ")";
}

const char* yes_no(bool b) { return b ? "yes" : "no"; }

// Each verb returns its JSON report, writes the table form to `table`, and
// reports whether a property check failed.
struct Outcome {
  Json json;
  std::string table;
  bool counterexample = false;
};

Outcome do_decompose(const Options& o) {
  const Loaded in = load(o);
  const FiniteSystem& sys = in.system;
  const auto od = orbit_decomposition(sys);
  const auto cd = chain_decomposition(sys);
  const auto report = minimality_report(sys);
  Outcome r;
  r.json = io::decomposition_to_json(sys, od, cd);
  r.json["minimal"] = is_minimal(sys);
  r.json["free"] = is_free(sys);
  r.json["minimality_statements"] = io::minimality_to_json(report);
  Json orbit_sizes = Json::array();
  for (const auto& c : orbit_space(sys)) {
    orbit_sizes.push_back(c.points.size());
  }
  r.json["orbit_sizes"] = std::move(orbit_sizes);

  std::ostringstream t;
  t << "points: " << sys.size() << "\n";
  for (const auto& c : cd.chains) {
    t << "chain: " << join(sys, c, " -> ") << "\n";
  }
  for (const auto& c : cd.cycles) {
    t << "cycle: " << join(sys, c, " -> ") << " -> " << sys.label(c.front()) << "\n";
  }
  for (PointId x = 0; x < sys.size(); ++x) {
    t << "  " << sys.label(x) << ": " << to_string(od.labels[x]) << "\n";
  }
  t << "minimal: " << yes_no(is_minimal(sys)) << "\nfree: " << yes_no(is_free(sys)) << "\n";
  r.table = t.str();
  return r;
}

Outcome do_domains(const Options& o) {
  const Loaded in = load(o);
  const auto table = compute_domains(in.system, o.horizon);
  Outcome r;
  r.json = io::domains_to_json(in.system, table);
  std::ostringstream t;
  const auto h = static_cast<long>(table.horizon());
  for (long n = -h; n <= h; ++n) {
    t << "D_" << n << " = {" << join(in.system, members(table.at(n)), ", ") << "}\n";
  }
  t << "stabilized: " << yes_no(table.stabilized()) << "\n";
  r.table = t.str();
  return r;
}

Outcome do_measures(const Options& o) {
  const Loaded in = load(o);
  if (o.invariant && (o.conformal || !o.rank.empty())) {
    throw ValidationError("--invariant cannot be combined with --conformal or --rank");
  }
  if (o.conformal && !o.rank.empty()) {
    throw ValidationError("--conformal and --rank are alternatives");
  }
  MeasurePolytope p;
  if (o.conformal) {
    if (*o.conformal == 0) {
      throw ValidationError("--conformal must be at least 1");
    }
    p = conformal_measure_polytope(in.system, *o.conformal);
  } else if (!o.rank.empty() || (!o.invariant && in.rank)) {
    p = conformal_measure_polytope(in.system, resolve_rank(o, in));
  } else {
    p = invariant_measure_polytope(in.system);
  }
  Outcome r;
  r.json = io::polytope_to_json(in.system, p);
  std::ostringstream t;
  t << (p.kind == PolytopeKind::Invariant ? "invariant" : "conformal") << " measures on ("
    << join(in.system, members(in.system.all_points()), ", ") << ")\n";
  for (const auto& c : p.constraints) {
    t << "  constraint: " << describe(in.system, c) << "\n";
  }
  if (p.empty()) {
    t << "empty polytope\n";
  } else {
    t << "affine dimension: " << p.affine_dimension << "\n";
    for (const auto& v : p.vertices) {
      t << "  vertex: " << measure_line(in.system, v) << "\n";
    }
  }
  r.table = t.str();
  return r;
}

Outcome do_break(const Options& o) {
  const Loaded in = load(o);
  const PointSet y = parse_break_set(in.system, o.break_set);
  const BreakReport report = check_conditions(in.system, y);
  Outcome r;
  r.json = io::break_report_to_json(in.system, report);
  std::vector<std::pair<std::string, std::string>> rows{
      {"preserves orbit size", yes_no(report.preserves_orbit_size)},
      {"meets once and in D_gl", yes_no(report.meets_once_and_in_dgl)},
      {"preserves invariant measures", yes_no(report.preserves_measures)},
      {"restricted minimal", yes_no(report.restricted_minimal)},
      {"preserves dense orbits", yes_no(report.preserves_dense_orbits)},
      {"restricted simple", yes_no(report.restricted_simple)}};
  if (is_global(in.system) && is_free(report.restricted)) {
    const auto traces = verify_break_traces(in.system, y, resolve_rank(o, in));
    r.json["traces"] = io::break_trace_report_to_json(traces);
    std::string blocks;
    for (const auto& s : traces.block_sizes) {
      blocks += (blocks.empty() ? "M_" : " M_") + s;
    }
    rows.emplace_back("broken algebra blocks", blocks);
    if (traces.traces_match_invariant_measures) {
      rows.emplace_back("traces match invariant measures",
                        yes_no(*traces.traces_match_invariant_measures));
    }
    rows.emplace_back("broken conformal polytope nonempty",
                      yes_no(traces.broken_conformal_nonempty));
    if (traces.global_conformal_empty) {
      rows.emplace_back("global conformal polytope empty", yes_no(*traces.global_conformal_empty));
    }
  }
  std::size_t width = 0;
  for (const auto& row : rows) {
    width = std::max(width, row.first.size() + 1);
  }
  std::ostringstream t;
  for (const auto& [key, value] : rows) {
    t << std::left << std::setw(static_cast<int>(width + 1)) << key + ":" << value << "\n";
  }
  r.table = t.str();
  return r;
}

Outcome do_cp(const Options& o) {
  const Loaded in = load(o);
  const CpAlgebra cp = build_cp_algebra(in.system, resolve_rank(o, in));
  Outcome r;
  r.json = io::cp_report(cp);
  std::ostringstream t;
  const FiniteSystem& sys = cp.system();
  for (const auto& blk : cp.blocks()) {
    t << "block M_" << blk.size << " on chain " << join(sys, blk.chain, " -> ") << "\n";
  }
  const auto fibers = fixed_point_fibers(sys, cp.rank());
  t << "fixed-point fibers:";
  for (PointId x = 0; x < sys.size(); ++x) {
    t << " " << sys.label(x) << "=" << fibers[x];
  }
  t << "\n";
  for (const auto& tau : traces_of_cp(cp)) {
    t << "extreme trace -> measure " << measure_line(sys, measure_from_trace(cp, tau)) << "\n";
  }
  r.table = t.str();
  return r;
}

Outcome do_traces(const Options& o) {
  const Loaded in = load(o);
  const RankFunction rank = resolve_rank(o, in);
  const CpAlgebra cp = build_cp_algebra(in.system, rank);
  const MeasurePolytope p = conformal_measure_polytope(in.system, rank);
  std::vector<Measure> from_traces;
  for (const auto& tau : traces_of_cp(cp)) {
    from_traces.push_back(measure_from_trace(cp, tau));
  }
  const bool match = same_vertex_set(from_traces, p.vertices);
  Outcome r;
  r.json = io::cp_report(cp);
  Json vertices = Json::array();
  for (const auto& v : p.vertices) {
    vertices.push_back(io::measure_to_json(in.system, v));
  }
  r.json["conformal_vertices"] = std::move(vertices);
  r.json["traces_match_conformal_measures"] = match;
  r.counterexample = !match;
  std::ostringstream t;
  t << "extreme traces: " << from_traces.size() << "\n";
  for (const auto& m : from_traces) {
    t << "  " << measure_line(in.system, m) << "\n";
  }
  t << "conformal vertices: " << p.vertices.size() << "\n";
  t << "trace/measure correspondence: " << (match ? "exact" : "MISMATCH") << "\n";
  r.table = t.str();
  return r;
}

VerifyReport verify_minimality(std::size_t max_size) {
  VerifyReport r;
  r.name = "minimality";
  for (std::size_t n = 0; n <= max_size; ++n) {
    for (const auto& theta : PartialInjections(n)) {
      const FiniteSystem sys(theta);
      const auto m = minimality_report(sys);
      ++r.instances;
      if (m.no_proper_invariant_subset != m.all_orbits_dense) {
        ++r.counterexample_count;
        if (r.counterexamples.size() < 10) {
          r.counterexamples.push_back({theta, {}, "(1) and (2) disagree"});
        }
      }
    }
  }
  return r;
}

std::vector<std::size_t> sizes_up_to(std::size_t lo, std::size_t max_size) {
  std::vector<std::size_t> out;
  for (std::size_t n = lo; n <= max_size; ++n) {
    out.push_back(n);
  }
  return out;
}

Outcome do_verify(const Options& o) {
  if (o.max_size > kMaxEnumerationSize) {
    throw ValidationError("--max-size must be at most " + std::to_string(kMaxEnumerationSize));
  }
  VerifyReport report;
  if (o.target == "blurbs") {
    report = verify_blurbs(sizes_up_to(1, o.max_size),
                           o.global ? EnumerationMode::Permutations
                                    : EnumerationMode::PartialInjections);
  } else if (o.target == "minimality") {
    report = verify_minimality(o.max_size);
  } else if (o.target == "simplicity") {
    report = verify_break_simplicity(sizes_up_to(1, o.max_size));
  } else if (o.target == "restricted-minimality") {
    report = verify_restricted_minimality(sizes_up_to(1, o.max_size));
  } else {
    throw ValidationError("unknown verify target '" + o.target + "'");
  }
  Outcome r;
  r.json = io::verify_report_to_json(report);
  r.counterexample = !report.ok();
  std::ostringstream t;
  t << report.name << ": " << report.instances << " instances, " << report.counterexample_count
    << " counterexamples\n";
  for (const auto& c : report.counterexamples) {
    t << "  counterexample: " << c.detail << "\n";
  }
  for (const auto& s : report.skipped_statements) {
    t << "  skipped: " << s << "\n";
  }
  r.table = t.str();
  return r;
}

Outcome do_demo(const Options& o) {
  Outcome r;
  std::ostringstream t;
  auto step = [&](const std::string& key, Options sub,
                  const std::function<Outcome(const Options&)>& verb) {
    sub.format = o.format;
    Outcome part = verb(sub);
    r.json[key] = std::move(part.json);
    r.counterexample = r.counterexample || part.counterexample;
    t << "== " << key << "\n" << part.table;
  };
  Options chain;
  chain.spec = "chain:3";
  chain.rank = "2";
  step("cp chain:3 rank 2", chain, do_cp);
  Options cycle;
  cycle.spec = "cycle:5";
  cycle.conformal = 2;
  step("measures cycle:5 conformal 2", cycle, do_measures);
  Options rot;
  rot.spec = "cycle:5";
  rot.break_set = "x0";
  step("break cycle:5 at x0", rot, do_break);
  rot.rank = "2";
  step("break cycle:5 at x0 rank 2", rot, do_break);
  r.table = t.str();
  return r;
}

void add_input_options(CLI::App* sub, Options& o) {
  sub->add_option("--spec", o.spec,
                  "generator spec: chain:N, cycle:N, rotation:Q:P[:b1,b2], random:N[:SEED], "
                  "parts joined by '+', optional @D rank suffix");
  sub->add_option("--input", o.input, "system description file (JSON)");
  sub->add_option("--format", o.format, "output format")
      ->check(CLI::IsMember({"table", "json"}));
}

void add_rank_option(CLI::App* sub, Options& o) {
  sub->add_option("--rank", o.rank, "constant rank D or a JSON file mapping points to ranks");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Finite partial dynamical systems: orbits, measures, orbit-breaking and "
               "Cuntz-Pimsner matrix models"};
  app.name("pardyn");
  app.require_subcommand(1);

  std::function<Outcome(const Options&)> verb;
  auto bind = [&](CLI::App* sub, std::function<Outcome(const Options&)> f) {
    sub->callback([&verb, f = std::move(f)] { verb = f; });
  };

  auto* decompose = app.add_subcommand(
      "decompose", "chains, cycles, orbit types, minimality and freeness");
  add_input_options(decompose, o);
  bind(decompose, do_decompose);

  auto* domains = app.add_subcommand("domains", "the domains D_n for |n| <= horizon");
  add_input_options(domains, o);
  domains->add_option("--horizon", o.horizon, "horizon N (default: number of points)");
  bind(domains, do_domains);

  auto* measures = app.add_subcommand(
      "measures", "vertices of the invariant (default) or conformal measure polytope");
  add_input_options(measures, o);
  add_rank_option(measures, o);
  measures->add_option("--conformal", o.conformal, "constant conformality factor D");
  measures->add_flag("--invariant", o.invariant, "invariant measures");
  bind(measures, do_measures);

  auto* brk = app.add_subcommand(
      "break", "remove Y from the domain and check the orbit-breaking conditions");
  add_input_options(brk, o);
  add_rank_option(brk, o);
  brk->add_option("--break", o.break_set, "comma-separated point names forming Y")->required();
  bind(brk, do_break);

  auto* cp = app.add_subcommand(
      "cp", "block structure, fixed-point fibers and extreme traces of the CP algebra");
  add_input_options(cp, o);
  add_rank_option(cp, o);
  bind(cp, do_cp);

  auto* traces = app.add_subcommand(
      "traces", "compare extreme traces of the CP algebra with conformal measures");
  add_input_options(traces, o);
  add_rank_option(traces, o);
  bind(traces, do_traces);

  auto* verify = app.add_subcommand("verify", "exhaustive equivalence checks");
  verify->add_option("target", o.target,
                     "blurbs | minimality | simplicity | restricted-minimality")
      ->required();
  verify->add_option("--max-size", o.max_size, "largest system size enumerated");
  verify->add_flag("--global", o.global, "blurbs over permutations only");
  verify->add_option("--format", o.format, "output format")
      ->check(CLI::IsMember({"table", "json"}));
  bind(verify, do_verify);

  auto* demo = app.add_subcommand("demo", "a short tour of worked examples");
  demo->add_option("--format", o.format, "output format")
      ->check(CLI::IsMember({"table", "json"}));
  bind(demo, do_demo);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInvalid;
  }

  try {
    const Outcome result = verb(o);
    if (o.format == "json") {
      out << result.json.dump(2) << "\n";
    } else {
      out << result.table;
    }
    return result.counterexample ? kExitCounterexample : kExitOk;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  }
}

}  // namespace pardyn::cli
