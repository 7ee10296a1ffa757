#pragma once

// Exact invariant and conformal probability measures on finite systems.
//
// A measure on a finite discrete space is a weight per point, so the
// invariance condition mu(theta^{-1}(Y)) = mu(Y) and the conformality
// condition mu(theta(Y)) = d mu(Y) only need to hold on singletons. Both are
// "mu(theta(u)) = factor * mu(u)" for u in the domain, which pins the weights
// of each chain or cycle up to one scalar. Vertices are therefore computed
// structurally: one per chain, and one per cycle whose rank product is 1.

#include "pardyn/rank.hpp"
#include "pardyn/rational.hpp"
#include "pardyn/system.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace pardyn {

struct Measure {
  std::vector<Rational> weights;

  Rational total() const;
  Rational mass(const PointSet& s) const;
  bool is_probability() const;

  friend bool operator==(const Measure&, const Measure&) = default;
  friend auto operator<=>(const Measure& a, const Measure& b) {
    return a.weights <=> b.weights;
  }
};

/// mu(image) = factor * mu(source), where image = theta(source).
struct Constraint {
  PointId source;
  PointId image;
  Rational factor;

  friend bool operator==(const Constraint&, const Constraint&) = default;
};

std::string describe(const FiniteSystem& sys, const Constraint& c);

enum class PolytopeKind : std::uint8_t { Invariant, Conformal };

struct MeasurePolytope {
  PolytopeKind kind = PolytopeKind::Invariant;
  std::vector<Constraint> constraints;
  std::vector<Measure> vertices;
  /// -1 when empty.
  long affine_dimension = -1;

  bool empty() const { return vertices.empty(); }
  /// First constraint violated by `mu`, if any. Does not check positivity or
  /// normalization.
  std::optional<Constraint> first_violation(const Measure& mu) const;
  /// Probability measure satisfying every constraint.
  bool contains(const Measure& mu) const;
};

/// Vertex lists compared as sets.
bool same_vertex_set(std::vector<Measure> a, std::vector<Measure> b);

MeasurePolytope invariant_measure_polytope(const FiniteSystem& sys);
/// Rank-weighted conformality mu(theta(u)) = d(u) mu(u).
MeasurePolytope conformal_measure_polytope(const FiniteSystem& sys, const RankFunction& rank);
MeasurePolytope conformal_measure_polytope(const FiniteSystem& sys, std::uint32_t d);

struct VanishingReport {
  std::uint32_t d = 1;
  bool in_polytope = false;
  /// Human-readable first violated equality, when not in the polytope.
  std::optional<std::string> violated_constraint;
  Rational mass_plus;
  Rational mass_minus;
  Rational mass_glob;
  /// mu(D_+) = mu(D_-) = 0 for d = 1; mu(D_+) = 0 for d > 1.
  bool plus_minus_vanish = false;
  /// mu(D_gl) = 0; only asserted for d > 1.
  std::optional<bool> glob_vanishes;
  bool passed = false;
};

/// Checks the vanishing statements for a measure claimed to be invariant
/// (d = 1) or d-conformal (d > 1). Throws ValidationError if `mu` is not a
/// probability measure on the system's points.
VanishingReport verify_vanishing(const FiniteSystem& sys, const Measure& mu, std::uint32_t d);

struct ConformalDefect {
  Rational max_defect;
  /// Domain point where the maximum is attained (first such point).
  std::optional<PointId> argmax;
};

/// max over u in the domain of |mu(theta(u)) - d(u) mu(u)|.
ConformalDefect conformal_defect(const FiniteSystem& sys, const RankFunction& rank,
                                 const Measure& mu);

/// Truncated backward ray x_0 <- x_{-1} <- ... <- x_{-(N-1)}: point i is
/// x_{-i}, labelled "x0", "x-1", ...; theta(x_{-i}) = x_{-(i-1)}.
FiniteSystem backward_ray(std::size_t length);

struct ConformalApproximant {
  FiniteSystem ray;
  Measure measure;
  Rational error_bound;
};

/// mu_n = (sum_{i<=n} d^-i)^-1 sum_{i<=n} d^-i delta_{x_{-i}} on the ray of
/// the given length, with error bound d^-n (sum_{i<=n} d^-i)^-1.
/// Throws ValidationError unless n < length and d >= 1.
ConformalApproximant conformal_sequence(std::size_t length, std::uint32_t d, std::size_t n);

}  // namespace pardyn
