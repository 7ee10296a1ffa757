#pragma once

// Orbit-breaking: removing a set Y from the domain of theta, and exhaustive
// checks of the equivalences relating preserved orbit sizes, sets meeting
// each orbit at most once, preserved invariant measures, minimality and the
// trace spaces of the broken Cuntz-Pimsner algebra.

#include "pardyn/rank.hpp"
#include "pardyn/system.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace pardyn {

/// theta restricted to domain(theta) \ Y. Throws ValidationError unless
/// Y ⊆ domain(theta).
FiniteSystem break_orbit(const FiniteSystem& sys, const PointSet& y);

bool is_global(const FiniteSystem& sys);

/// |orb^{U\Y}(x)| = |orb(x)| for every x.
bool preserves_orbit_size(const FiniteSystem& sys, const FiniteSystem& broken);
/// Y ⊆ D_gl and theta^n(y) ∈ Y implies theta^n(y) = y for every realized n != 0.
bool meets_once_and_in_glob(const FiniteSystem& sys, const PointSet& y);
/// Invariant-measure polytopes before and after have the same vertex set.
bool preserves_invariant_measures(const FiniteSystem& sys, const FiniteSystem& broken);
/// Every point with a dense theta-orbit keeps a dense orbit after breaking.
bool preserves_dense_orbits(const FiniteSystem& sys, const FiniteSystem& broken);

struct BreakReport {
  bool preserves_orbit_size = false;
  bool meets_once_and_in_dgl = false;
  bool preserves_measures = false;
  bool restricted_minimal = false;
  bool preserves_dense_orbits = false;
  bool restricted_simple = false;
  FiniteSystem restricted;
};

/// Every field is computed on its own, never from another field.
BreakReport check_conditions(const FiniteSystem& sys, const PointSet& y);

enum class EnumerationMode : std::uint8_t { PartialInjections, Permutations };

struct Counterexample {
  std::vector<std::optional<PointId>> theta;
  std::vector<PointId> y;
  std::string detail;
};

struct VerifyReport {
  std::string name;
  std::size_t instances = 0;
  std::vector<Counterexample> counterexamples;
  std::vector<std::string> skipped_statements;
  /// Total counterexamples found (only the first few are kept).
  std::size_t counterexample_count = 0;

  bool ok() const { return counterexample_count == 0; }
  void merge(VerifyReport other);
};

/// Exhaustive check of (1) orbit size preserved <=> (2) Y ⊆ D_gl meets every
/// orbit at most once <=> (3) invariant measures unchanged, over every system
/// of each size in the given mode and every Y ⊆ domain(theta). The search
/// space is split into `shards` independent pieces evaluated concurrently.
VerifyReport verify_blurbs(const std::vector<std::size_t>& sizes, EnumerationMode mode,
                           unsigned shards = 0);

/// The finite-applicable part of the restricted-minimality theorem over all
/// single cycles of the given sizes and all Y: (4) <=> (5) <=> (6) and
/// (1) <=> (2), plus (3) => (2). Links that need an infinite space are
/// listed as skipped.
VerifyReport verify_restricted_minimality(const std::vector<std::size_t>& cycle_sizes);

struct BreakTraceReport {
  FiniteSystem broken;
  bool meets_once = false;
  /// Block sizes of the broken algebra (decimal strings, may be huge).
  std::vector<std::string> block_sizes;
  /// rank == 1 only: invariant measures of sys coincide with the measures of
  /// the extreme traces of the broken algebra.
  std::optional<bool> traces_match_invariant_measures;
  std::size_t invariant_vertex_count = 0;
  std::size_t broken_trace_count = 0;
  /// Conformal polytope of the broken system is nonempty.
  bool broken_conformal_nonempty = false;
  /// The broken algebra's extreme traces are exactly the broken conformal
  /// polytope's vertices.
  bool broken_traces_match_conformal = false;
  /// Conformal polytope of the unbroken system is empty; evaluated when the
  /// rank extends to the whole domain (constant rank, or given everywhere).
  std::optional<bool> global_conformal_empty;
  /// Nonconstant or higher rank: broken traces outnumber the traces coming
  /// from invariant measures of the global system.
  std::optional<bool> new_traces_appear;
};

/// `rank` is given on the global system (restricted to the broken domain)
/// or on the broken system. Throws ValidationError when the broken system
/// still has a cycle or sys is not global.
BreakTraceReport verify_break_traces(const FiniteSystem& sys, const PointSet& y,
                                     const RankFunction& rank);

/// Over all single cycles of the given sizes and all Y ⊆ X: the broken
/// algebra is a single block iff |Y| = 1. Y = ∅ leaves the cycle, whose
/// algebra has no finite matrix model, and must not be reported simple.
VerifyReport verify_break_simplicity(const std::vector<std::size_t>& cycle_sizes);

}  // namespace pardyn
