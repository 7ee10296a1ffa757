#include "pardyn/measures.hpp"

#include "pardyn/dynamics.hpp"
#include "pardyn/error.hpp"

#include <algorithm>

namespace pardyn {

Rational Measure::total() const {
  Rational t = 0;
  for (const auto& w : weights) {
    t += w;
  }
  return t;
}

Rational Measure::mass(const PointSet& s) const {
  Rational t = 0;
  for (auto x = s.find_first(); x != PointSet::npos; x = s.find_next(x)) {
    t += weights[x];
  }
  return t;
}

bool Measure::is_probability() const {
  return std::all_of(weights.begin(), weights.end(), [](const Rational& w) { return w >= 0; }) &&
         total() == 1;
}

std::string describe(const FiniteSystem& sys, const Constraint& c) {
  std::string s = "mu(" + sys.label(c.image) + ") = ";
  if (c.factor != 1) {
    s += to_string(c.factor) + "*";
  }
  return s + "mu(" + sys.label(c.source) + ")";
}

std::optional<Constraint> MeasurePolytope::first_violation(const Measure& mu) const {
  for (const auto& c : constraints) {
    if (mu.weights[c.image] != c.factor * mu.weights[c.source]) {
      return c;
    }
  }
  return std::nullopt;
}

bool MeasurePolytope::contains(const Measure& mu) const {
  return mu.is_probability() && !first_violation(mu);
}

bool same_vertex_set(std::vector<Measure> a, std::vector<Measure> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  a.erase(std::unique(a.begin(), a.end()), a.end());
  b.erase(std::unique(b.begin(), b.end()), b.end());
  return a == b;
}

namespace {

// Normalized measure supported on `path` with weights proportional to
// `relative` (same length).
Measure normalized_on(std::size_t n, const std::vector<PointId>& path,
                      const std::vector<Rational>& relative) {
  Rational sum = 0;
  for (const auto& r : relative) {
    sum += r;
  }
  Measure m{std::vector<Rational>(n, Rational(0))};
  for (std::size_t i = 0; i < path.size(); ++i) {
    m.weights[path[i]] = relative[i] / sum;
  }
  return m;
}

MeasurePolytope polytope_for_factors(const FiniteSystem& sys,
                                     const std::vector<std::uint32_t>& factor,
                                     PolytopeKind kind) {
  MeasurePolytope p;
  p.kind = kind;
  for (PointId u = 0; u < sys.size(); ++u) {
    if (const auto& v = sys.image(u)) {
      p.constraints.push_back({u, *v, Rational(factor[u])});
    }
  }
  const ChainDecomposition cd = chain_decomposition(sys);
  for (const auto& chain : cd.chains) {
    // mu(x_{k+1}) = d(x_k) mu(x_k): weights grow toward the chain end.
    std::vector<Rational> rel;
    rel.reserve(chain.size());
    Rational w = 1;
    for (std::size_t k = 0; k < chain.size(); ++k) {
      rel.push_back(w);
      if (k + 1 < chain.size()) {
        w *= factor[chain[k]];
      }
    }
    p.vertices.push_back(normalized_on(sys.size(), chain, rel));
  }
  for (const auto& cycle : cd.cycles) {
    // Around a cycle the weight returns multiplied by the rank product, so
    // only product 1 (all ranks 1) leaves a nonzero solution.
    const bool unimodular = std::all_of(cycle.begin(), cycle.end(),
                                        [&](PointId u) { return factor[u] == 1; });
    if (unimodular) {
      p.vertices.push_back(
          normalized_on(sys.size(), cycle, std::vector<Rational>(cycle.size(), Rational(1))));
    }
  }
  p.affine_dimension = static_cast<long>(p.vertices.size()) - 1;
  return p;
}

}  // namespace

MeasurePolytope invariant_measure_polytope(const FiniteSystem& sys) {
  return polytope_for_factors(sys, RankFunction::constant(sys, 1).values(),
                              PolytopeKind::Invariant);
}

MeasurePolytope conformal_measure_polytope(const FiniteSystem& sys, const RankFunction& rank) {
  if (rank.size() != sys.size()) {
    throw ValidationError("rank function does not match the system");
  }
  for (PointId u = 0; u < sys.size(); ++u) {
    if (sys.in_domain(u) && rank.values()[u] == 0) {
      throw ValidationError("rank missing on domain point '" + sys.label(u) + "'");
    }
  }
  return polytope_for_factors(sys, rank.values(), PolytopeKind::Conformal);
}

MeasurePolytope conformal_measure_polytope(const FiniteSystem& sys, std::uint32_t d) {
  return conformal_measure_polytope(sys, RankFunction::constant(sys, d));
}

VanishingReport verify_vanishing(const FiniteSystem& sys, const Measure& mu, std::uint32_t d) {
  if (d == 0) {
    throw ValidationError("d must be a positive integer");
  }
  if (mu.weights.size() != sys.size()) {
    throw ValidationError("measure has " + std::to_string(mu.weights.size()) +
                          " weights for " + std::to_string(sys.size()) + " points");
  }
  if (!mu.is_probability()) {
    throw ValidationError("measure is not a probability measure");
  }
  VanishingReport r;
  r.d = d;
  const MeasurePolytope claimed = d == 1 ? invariant_measure_polytope(sys)
                                         : conformal_measure_polytope(sys, d);
  if (auto bad = claimed.first_violation(mu)) {
    r.violated_constraint = describe(sys, *bad);
  }
  r.in_polytope = !r.violated_constraint;

  const OrbitDecomposition od = orbit_decomposition(sys);
  r.mass_plus = mu.mass(od.points_of(OrbitType::Plus));
  r.mass_minus = mu.mass(od.points_of(OrbitType::Minus));
  r.mass_glob = mu.mass(od.points_of(OrbitType::Glob));
  r.plus_minus_vanish = r.mass_plus == 0 && (d > 1 || r.mass_minus == 0);
  if (d > 1) {
    r.glob_vanishes = r.mass_glob == 0;
  }
  r.passed = r.in_polytope && r.plus_minus_vanish && r.glob_vanishes.value_or(true);
  return r;
}

ConformalDefect conformal_defect(const FiniteSystem& sys, const RankFunction& rank,
                                 const Measure& mu) {
  ConformalDefect out{Rational(0), std::nullopt};
  for (PointId u = 0; u < sys.size(); ++u) {
    const auto& v = sys.image(u);
    if (!v) {
      continue;
    }
    const Rational defect = abs(mu.weights[*v] - Rational(rank.at(u)) * mu.weights[u]);
    if (!out.argmax || defect > out.max_defect) {
      out.max_defect = defect;
      out.argmax = u;
    }
  }
  return out;
}

FiniteSystem backward_ray(std::size_t length) {
  std::vector<std::optional<PointId>> image(length);
  std::vector<std::string> labels;
  labels.reserve(length);
  for (std::size_t i = 0; i < length; ++i) {
    if (i > 0) {
      image[i] = i - 1;
    }
    labels.push_back(i == 0 ? "x0" : "x-" + std::to_string(i));
  }
  return FiniteSystem(std::move(image), std::move(labels));
}

ConformalApproximant conformal_sequence(std::size_t length, std::uint32_t d, std::size_t n) {
  if (d == 0) {
    throw ValidationError("d must be a positive integer");
  }
  if (n >= length) {
    throw ValidationError("index n = " + std::to_string(n) + " must be below the ray length " +
                          std::to_string(length));
  }
  ConformalApproximant out{backward_ray(length), {}, Rational(0)};
  std::vector<Rational> relative;  // d^{-i}
  Rational sum = 0;
  Rational power = 1;
  for (std::size_t i = 0; i <= n; ++i) {
    relative.push_back(power);
    sum += power;
    power /= d;
  }
  out.measure.weights.assign(length, Rational(0));
  for (std::size_t i = 0; i <= n; ++i) {
    out.measure.weights[i] = relative[i] / sum;
  }
  out.error_bound = relative[n] / sum;
  return out;
}

}  // namespace pardyn
