#pragma once

// Domains D_n, orbits, orbit types, invariance, minimality and restrictions
// of a finite partial automorphism.

#include "pardyn/system.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

namespace pardyn {

/// D_n for n in [-horizon, horizon]. D_n is the range of theta^n and
/// D_{-n} its maximal domain.
class DomainTable {
public:
  DomainTable(std::size_t horizon, std::vector<PointSet> negative,
              std::vector<PointSet> positive, bool stabilized);

  std::size_t horizon() const { return horizon_; }
  /// Throws std::out_of_range when |n| > horizon.
  const PointSet& at(long n) const;
  bool stabilized() const { return stabilized_; }

private:
  std::size_t horizon_;
  std::vector<PointSet> negative_;  // negative_[k] = D_{-k}
  std::vector<PointSet> positive_;  // positive_[k] = D_k
  bool stabilized_;
};

/// Horizon 0 selects the default |points| (which always stabilizes).
DomainTable compute_domains(const FiniteSystem& sys, std::size_t horizon = 0);

PointSet orbit(const FiniteSystem& sys, PointId x);
/// {theta^n(x) : n >= 0 and x in D_{-n}}.
PointSet forward_orbit(const FiniteSystem& sys, PointId x);
/// {theta^{-n}(x) : n >= 0 and x in D_n}.
PointSet backward_orbit(const FiniteSystem& sys, PointId x);

enum class OrbitType : std::uint8_t { Fin, Plus, Minus, Glob };

const char* to_string(OrbitType t);

struct OrbitDecomposition {
  std::vector<OrbitType> labels;

  PointSet points_of(OrbitType t) const;
};

/// Classifies every point by the four-case membership rule on D_n.
OrbitDecomposition orbit_decomposition(const FiniteSystem& sys);

/// Maximal theta-paths x_1 -> ... -> x_N (x_1 not in V, x_N not in U) and
/// theta-cycles. Chains are ordered by their first point; each cycle starts
/// at its smallest point.
struct ChainDecomposition {
  std::vector<std::vector<PointId>> chains;
  std::vector<std::vector<PointId>> cycles;
};

ChainDecomposition chain_decomposition(const FiniteSystem& sys);

/// theta(Y ∩ U) ⊆ Y and theta^{-1}(Y ∩ V) ⊆ Y.
bool is_invariant(const FiniteSystem& sys, const PointSet& y);
/// Every orbit is the whole space (dense = everything on a finite set).
bool is_minimal(const FiniteSystem& sys);
/// No point lies on a theta-cycle.
bool is_free(const FiniteSystem& sys);

/// Smallest set containing `seed` that is closed under the requested
/// directions of theta.
PointSet forward_closure(const FiniteSystem& sys, const PointSet& seed);
PointSet backward_closure(const FiniteSystem& sys, const PointSet& seed);
PointSet invariant_closure(const FiniteSystem& sys, const PointSet& seed);

/// Statements of the minimality theorem evaluated literally on the finite
/// model. The D_gl statements (3)-(5) are present only when D_gl is nonempty.
struct MinimalityReport {
  bool no_proper_invariant_subset;          // (1)
  bool all_orbits_dense;                    // (2)
  std::optional<bool> glob_orbits_dense;    // (3)
  std::optional<bool> glob_forward_dense;   // (4)
  std::optional<bool> glob_backward_dense;  // (5)
  bool invariant_meeting_glob_trivial;      // (6)
  bool forward_invariant_meeting_glob_trivial;   // (7)
  bool backward_invariant_meeting_glob_trivial;  // (8)
};

MinimalityReport minimality_report(const FiniteSystem& sys);

/// Same points, theta defined exactly on W. Throws ValidationError unless
/// W ⊆ domain(theta).
FiniteSystem restrict_domain(const FiniteSystem& sys, const PointSet& w);

/// Subsystem on an invariant set Y (points renumbered in increasing order,
/// labels kept). Throws ValidationError if Y is not invariant.
FiniteSystem restrict_to_invariant(const FiniteSystem& sys, const PointSet& y);

struct OrbitComponent {
  std::vector<PointId> points;  // increasing, ids in the parent system
  FiniteSystem subsystem;
};

/// Orbits ordered by their smallest point.
std::vector<OrbitComponent> orbit_space(const FiniteSystem& sys);

/// All orbits as sets, ordered by smallest point.
std::vector<PointSet> orbits(const FiniteSystem& sys);

}  // namespace pardyn
