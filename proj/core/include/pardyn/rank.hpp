#pragma once

#include "pardyn/system.hpp"

#include <cstdint>
#include <vector>

namespace pardyn {

/// Rank d(u) >= 1 of the bundle fiber at every point u of domain(theta).
/// Stored densely; off-domain entries are 0.
class RankFunction {
public:
  RankFunction() = default;
  /// `values[x]` must be >= 1 exactly when x is in the domain (0 elsewhere).
  RankFunction(const FiniteSystem& sys, std::vector<std::uint32_t> values);

  static RankFunction constant(const FiniteSystem& sys, std::uint32_t d);

  /// Rank at a domain point; throws ValidationError for off-domain points.
  std::uint32_t at(PointId u) const;
  const std::vector<std::uint32_t>& values() const { return values_; }
  std::size_t size() const { return values_.size(); }

  bool is_constant() const;
  /// The common value when constant (1 for an empty domain).
  std::uint32_t constant_value() const;

  /// Keeps the values on `sub`'s domain, which must be a subset of the
  /// domain this function was built for.
  RankFunction restricted_to(const FiniteSystem& sub) const;

  friend bool operator==(const RankFunction&, const RankFunction&) = default;

private:
  std::vector<std::uint32_t> values_;
};

}  // namespace pardyn
