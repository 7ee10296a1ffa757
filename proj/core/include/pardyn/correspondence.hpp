#pragma once

// The correspondence of sections of a trivial rank-d bundle over the domain
// of theta: right action by pointwise multiplication, left action twisted by
// theta, and the fiberwise standard inner product.

#include "pardyn/rank.hpp"
#include "pardyn/rational.hpp"
#include "pardyn/system.hpp"

#include <vector>

namespace pardyn {

/// Function on the points of a system.
using PointFunction = std::vector<Complex>;

PointFunction indicator(std::size_t n, PointId x);
PointFunction constant_function(std::size_t n, const Complex& c);

/// A vector of length d(u) at every domain point u; empty elsewhere.
struct Section {
  std::vector<std::vector<Complex>> fibers;

  friend bool operator==(const Section&, const Section&) = default;
};

class Correspondence {
public:
  Correspondence(FiniteSystem sys, RankFunction rank);

  const FiniteSystem& system() const { return sys_; }
  const RankFunction& rank() const { return rank_; }

  /// Throws ValidationError when the section's shape does not match the rank.
  void validate(const Section& xi) const;
  void validate(const PointFunction& f) const;

  Section zero_section() const;
  /// Standard basis vector e at the domain point u (e is 0-based).
  Section unit_section(PointId u, std::size_t e) const;
  /// Unit sections over all domain points, ordered by point then index.
  std::vector<Section> unit_sections() const;

  /// <xi, eta>(u) = sum_e conj(xi(u)_e) eta(u)_e on the domain, 0 elsewhere.
  PointFunction inner_product(const Section& xi, const Section& eta) const;
  /// (f . xi)(u) = xi(u) f(theta(u)).
  Section left_act(const PointFunction& f, const Section& xi) const;
  /// (xi . f)(u) = xi(u) f(u).
  Section right_act(const Section& xi, const PointFunction& f) const;

private:
  FiniteSystem sys_;
  RankFunction rank_;
};

}  // namespace pardyn
