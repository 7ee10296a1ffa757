#include "pardyn/json_io.hpp"

#include "pardyn/error.hpp"

#include <fstream>
#include <unordered_map>

namespace pardyn::io {

namespace {

std::string require_string(const Json& j, const std::string& field) {
  if (!j.is_string()) {
    throw ValidationError("field '" + field + "' must be a string");
  }
  return j.get<std::string>();
}

Json set_to_json(const FiniteSystem& sys, const PointSet& s) {
  Json out = Json::array();
  for (PointId x : members(s)) {
    out.push_back(sys.label(x));
  }
  return out;
}

Json path_to_json(const FiniteSystem& sys, const std::vector<PointId>& path) {
  Json out = Json::array();
  for (PointId x : path) {
    out.push_back(sys.label(x));
  }
  return out;
}

}  // namespace

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ValidationError("cannot open '" + path + "'");
  }
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ValidationError("'" + path + "' is not valid JSON: " + e.what());
  }
}

SystemFile system_from_json(const Json& j) {
  if (!j.is_object()) {
    throw ValidationError("system description must be a JSON object");
  }
  if (!j.contains("points") || !j["points"].is_array()) {
    throw ValidationError("field 'points' must be an array of names");
  }
  std::vector<std::string> labels;
  std::unordered_map<std::string, PointId> index;
  for (const auto& p : j["points"]) {
    auto name = require_string(p, "points");
    if (!index.emplace(name, labels.size()).second) {
      throw ValidationError("field 'points' lists '" + name + "' twice");
    }
    labels.push_back(std::move(name));
  }
  auto lookup = [&](const std::string& name, const std::string& field) {
    const auto it = index.find(name);
    if (it == index.end()) {
      throw ValidationError("field '" + field + "' names unknown point '" + name + "'");
    }
    return it->second;
  };
  std::vector<std::optional<PointId>> image(labels.size());
  if (j.contains("theta")) {
    if (!j["theta"].is_object()) {
      throw ValidationError("field 'theta' must be an object mapping names to names");
    }
    for (const auto& [from, to] : j["theta"].items()) {
      image[lookup(from, "theta")] = lookup(require_string(to, "theta." + from), "theta");
    }
  }
  SystemFile out{FiniteSystem(std::move(image), std::move(labels)), std::nullopt};
  if (j.contains("rank")) {
    out.rank = rank_from_json(out.system, j["rank"]);
  }
  return out;
}

SystemFile load_system(const std::string& path) {
  return system_from_json(read_json_file(path));
}

Json system_to_json(const FiniteSystem& sys, const RankFunction* rank) {
  Json out;
  out["points"] = sys.labels();
  Json theta = Json::object();
  for (PointId x = 0; x < sys.size(); ++x) {
    if (const auto& y = sys.image(x)) {
      theta[sys.label(x)] = sys.label(*y);
    }
  }
  out["theta"] = std::move(theta);
  if (rank != nullptr) {
    out["rank"] = rank_to_json(sys, *rank);
  }
  return out;
}

RankFunction rank_from_json(const FiniteSystem& sys, const Json& j) {
  if (j.is_object() && j.contains("rank") && j.size() == 1 && j["rank"].is_object()) {
    return rank_from_json(sys, j["rank"]);
  }
  if (!j.is_object()) {
    throw ValidationError("field 'rank' must be an object mapping names to positive integers");
  }
  std::vector<std::uint32_t> values(sys.size(), 0);
  for (const auto& [name, d] : j.items()) {
    const auto x = sys.find(name);
    if (!x) {
      throw ValidationError("field 'rank' names unknown point '" + name + "'");
    }
    if (!d.is_number_integer() || d.get<long long>() < 1) {
      throw ValidationError("field 'rank." + name + "' must be a positive integer");
    }
    values[*x] = d.get<std::uint32_t>();
  }
  return RankFunction(sys, std::move(values));
}

Json rank_to_json(const FiniteSystem& sys, const RankFunction& rank) {
  Json out = Json::object();
  for (PointId u = 0; u < sys.size(); ++u) {
    if (sys.in_domain(u)) {
      out[sys.label(u)] = rank.at(u);
    }
  }
  return out;
}

Json measure_to_json(const FiniteSystem& sys, const Measure& mu) {
  Json out = Json::object();
  for (PointId x = 0; x < sys.size(); ++x) {
    out[sys.label(x)] = to_string(mu.weights[x]);
  }
  return out;
}

Measure measure_from_json(const FiniteSystem& sys, const Json& j) {
  if (!j.is_object()) {
    throw ValidationError("measure must be an object mapping names to fraction strings");
  }
  Measure mu{std::vector<Rational>(sys.size(), Rational(0))};
  for (const auto& [name, w] : j.items()) {
    const auto x = sys.find(name);
    if (!x) {
      throw ValidationError("measure names unknown point '" + name + "'");
    }
    mu.weights[*x] = parse_rational(require_string(w, "measure." + name));
  }
  return mu;
}

Json polytope_to_json(const FiniteSystem& sys, const MeasurePolytope& p) {
  Json out;
  out["kind"] = p.kind == PolytopeKind::Invariant ? "invariant" : "conformal";
  Json constraints = Json::array();
  for (const auto& c : p.constraints) {
    constraints.push_back({{"source", sys.label(c.source)},
                           {"image", sys.label(c.image)},
                           {"factor", to_string(c.factor)},
                           {"equation", describe(sys, c)}});
  }
  out["constraints"] = std::move(constraints);
  Json vertices = Json::array();
  for (const auto& v : p.vertices) {
    vertices.push_back(measure_to_json(sys, v));
  }
  out["vertices"] = std::move(vertices);
  out["affine_dimension"] = p.affine_dimension;
  return out;
}

Json domains_to_json(const FiniteSystem& sys, const DomainTable& table) {
  Json out;
  out["horizon"] = table.horizon();
  out["stabilized"] = table.stabilized();
  Json sets = Json::object();
  const auto h = static_cast<long>(table.horizon());
  for (long n = -h; n <= h; ++n) {
    sets[std::to_string(n)] = set_to_json(sys, table.at(n));
  }
  out["sets"] = std::move(sets);
  return out;
}

Json decomposition_to_json(const FiniteSystem& sys, const OrbitDecomposition& od,
                           const ChainDecomposition& cd) {
  Json out;
  Json labels = Json::object();
  for (PointId x = 0; x < sys.size(); ++x) {
    labels[sys.label(x)] = to_string(od.labels[x]);
  }
  out["labels"] = std::move(labels);
  Json chains = Json::array();
  for (const auto& c : cd.chains) {
    chains.push_back(path_to_json(sys, c));
  }
  Json cycles = Json::array();
  for (const auto& c : cd.cycles) {
    cycles.push_back(path_to_json(sys, c));
  }
  out["chains"] = std::move(chains);
  out["cycles"] = std::move(cycles);
  return out;
}

Json minimality_to_json(const MinimalityReport& r) {
  Json out;
  out["1_minimal"] = r.no_proper_invariant_subset;
  out["2_all_orbits_dense"] = r.all_orbits_dense;
  if (r.glob_orbits_dense) {
    out["3_glob_orbits_dense"] = *r.glob_orbits_dense;
    out["4_glob_forward_orbits_dense"] = *r.glob_forward_dense;
    out["5_glob_backward_orbits_dense"] = *r.glob_backward_dense;
  }
  out["6_invariant_sets_meeting_glob_trivial"] = r.invariant_meeting_glob_trivial;
  out["7_forward_invariant_sets_meeting_glob_trivial"] = r.forward_invariant_meeting_glob_trivial;
  out["8_backward_invariant_sets_meeting_glob_trivial"] =
      r.backward_invariant_meeting_glob_trivial;
  return out;
}

Json complex_to_json(const Complex& z) {
  return Json::array({to_string(z.real()), to_string(z.imag())});
}

Json matrix_to_json(const Matrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.size(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.size(); ++j) {
      row.push_back(complex_to_json(m.at(i, j)));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

Json cp_report(const CpAlgebra& cp) {
  const FiniteSystem& sys = cp.system();
  Json out;
  Json blocks = Json::array();
  for (const auto& blk : cp.blocks()) {
    Json multiplicities = Json::array();
    for (const auto& m : blk.multiplicity) {
      multiplicities.push_back(m.str());
    }
    blocks.push_back({{"size", blk.size.str()},
                      {"chain", path_to_json(sys, blk.chain)},
                      {"position_multiplicities", std::move(multiplicities)},
                      {"materialized", blk.materialized}});
  }
  out["blocks"] = std::move(blocks);
  Json fibers = Json::object();
  const auto dims = fixed_point_fibers(sys, cp.rank());
  for (PointId x = 0; x < sys.size(); ++x) {
    fibers[sys.label(x)] = dims[x].str();
  }
  out["fiber_dimensions"] = std::move(fibers);
  Json traces = Json::array();
  for (const auto& tau : traces_of_cp(cp)) {
    Json weights = Json::array();
    for (const auto& w : tau.weights) {
      weights.push_back(to_string(w));
    }
    traces.push_back({{"block_weights", std::move(weights)},
                      {"measure", measure_to_json(sys, measure_from_trace(cp, tau))}});
  }
  out["extreme_traces"] = std::move(traces);
  return out;
}

Json break_report_to_json(const FiniteSystem& sys, const BreakReport& r) {
  (void)sys;
  Json out;
  out["preserves_orbit_size"] = r.preserves_orbit_size;
  out["meets_once_and_in_dgl"] = r.meets_once_and_in_dgl;
  out["preserves_measures"] = r.preserves_measures;
  out["restricted_minimal"] = r.restricted_minimal;
  out["preserves_dense_orbits"] = r.preserves_dense_orbits;
  out["restricted_simple"] = r.restricted_simple;
  out["restricted"] = system_to_json(r.restricted);
  return out;
}

Json break_trace_report_to_json(const BreakTraceReport& r) {
  Json out;
  out["broken"] = system_to_json(r.broken);
  out["meets_once"] = r.meets_once;
  out["block_sizes"] = r.block_sizes;
  if (r.traces_match_invariant_measures) {
    out["traces_match_invariant_measures"] = *r.traces_match_invariant_measures;
  }
  out["invariant_vertex_count"] = r.invariant_vertex_count;
  out["broken_trace_count"] = r.broken_trace_count;
  out["broken_conformal_nonempty"] = r.broken_conformal_nonempty;
  out["broken_traces_match_conformal"] = r.broken_traces_match_conformal;
  if (r.global_conformal_empty) {
    out["global_conformal_empty"] = *r.global_conformal_empty;
  }
  if (r.new_traces_appear) {
    out["new_traces_appear"] = *r.new_traces_appear;
  }
  return out;
}

Json verify_report_to_json(const VerifyReport& r) {
  Json out;
  out["name"] = r.name;
  out["instances"] = r.instances;
  out["counterexample_count"] = r.counterexample_count;
  Json cex = Json::array();
  for (const auto& c : r.counterexamples) {
    Json theta = Json::array();
    for (const auto& v : c.theta) {
      theta.push_back(v ? Json(*v) : Json(nullptr));
    }
    cex.push_back({{"theta", std::move(theta)}, {"y", c.y}, {"detail", c.detail}});
  }
  out["counterexamples"] = std::move(cex);
  out["skipped_statements"] = r.skipped_statements;
  return out;
}

}  // namespace pardyn::io
