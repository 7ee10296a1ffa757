#pragma once

// JSON formats. Fractions are always strings "p/q" (or "p"), never decimals.
//
//   system:   { "points": [names], "theta": { name: name, ... },
//               optional "rank": { name: d, ... } }
//   measure:  { name: "p/q", ... }
//   polytope: { "kind", "constraints": [...], "vertices": [measure...],
//               "affine_dimension" }
//   matrix:   [[["re", "im"], ...], ...] dense rows
//   verify:   { "instances": n, "counterexamples": [...],
//               "skipped_statements": [...] }

#include "pardyn/cp_algebra.hpp"
#include "pardyn/dynamics.hpp"
#include "pardyn/measures.hpp"
#include "pardyn/orbit_breaking.hpp"
#include "pardyn/rank.hpp"
#include "pardyn/system.hpp"

#include <json.hpp>

#include <optional>
#include <string>

namespace pardyn::io {

using Json = nlohmann::ordered_json;

struct SystemFile {
  FiniteSystem system;
  std::optional<RankFunction> rank;
};

/// Throws ValidationError naming the offending field.
SystemFile system_from_json(const Json& j);
SystemFile load_system(const std::string& path);
Json system_to_json(const FiniteSystem& sys, const RankFunction* rank = nullptr);

/// { name: d } over exactly the domain points, or { "rank": { ... } }.
RankFunction rank_from_json(const FiniteSystem& sys, const Json& j);
Json rank_to_json(const FiniteSystem& sys, const RankFunction& rank);

Json measure_to_json(const FiniteSystem& sys, const Measure& mu);
/// Missing points get weight 0.
Measure measure_from_json(const FiniteSystem& sys, const Json& j);

Json polytope_to_json(const FiniteSystem& sys, const MeasurePolytope& p);
Json domains_to_json(const FiniteSystem& sys, const DomainTable& table);
Json decomposition_to_json(const FiniteSystem& sys, const OrbitDecomposition& od,
                           const ChainDecomposition& cd);
Json minimality_to_json(const MinimalityReport& r);

Json complex_to_json(const Complex& z);
Json matrix_to_json(const Matrix& m);

/// Block sizes, fiber dimension per point, extreme traces and their measures.
Json cp_report(const CpAlgebra& cp);

Json break_report_to_json(const FiniteSystem& sys, const BreakReport& r);
Json break_trace_report_to_json(const BreakTraceReport& r);
Json verify_report_to_json(const VerifyReport& r);

Json read_json_file(const std::string& path);

}  // namespace pardyn::io
