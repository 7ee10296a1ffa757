#include "pardyn/rank.hpp"

#include "pardyn/error.hpp"

#include <string>

namespace pardyn {

RankFunction::RankFunction(const FiniteSystem& sys, std::vector<std::uint32_t> values)
    : values_(std::move(values)) {
  if (values_.size() != sys.size()) {
    throw ValidationError("rank function has " + std::to_string(values_.size()) +
                          " entries for " + std::to_string(sys.size()) + " points");
  }
  for (PointId u = 0; u < sys.size(); ++u) {
    if (sys.in_domain(u) && values_[u] == 0) {
      throw ValidationError("rank missing on domain point '" + sys.label(u) + "'");
    }
    if (!sys.in_domain(u) && values_[u] != 0) {
      throw ValidationError("rank given on point '" + sys.label(u) +
                            "' outside the domain of theta");
    }
  }
}

RankFunction RankFunction::constant(const FiniteSystem& sys, std::uint32_t d) {
  if (d == 0) {
    throw ValidationError("rank must be at least 1");
  }
  std::vector<std::uint32_t> v(sys.size(), 0);
  for (PointId u = 0; u < sys.size(); ++u) {
    if (sys.in_domain(u)) {
      v[u] = d;
    }
  }
  return RankFunction(sys, std::move(v));
}

std::uint32_t RankFunction::at(PointId u) const {
  if (u >= values_.size() || values_[u] == 0) {
    throw ValidationError("no rank at point " + std::to_string(u));
  }
  return values_[u];
}

bool RankFunction::is_constant() const {
  std::uint32_t seen = 0;
  for (auto v : values_) {
    if (v == 0) {
      continue;
    }
    if (seen != 0 && v != seen) {
      return false;
    }
    seen = v;
  }
  return true;
}

std::uint32_t RankFunction::constant_value() const {
  for (auto v : values_) {
    if (v != 0) {
      return v;
    }
  }
  return 1;
}

RankFunction RankFunction::restricted_to(const FiniteSystem& sub) const {
  if (sub.size() != values_.size()) {
    throw ValidationError("rank function and system disagree on point count");
  }
  std::vector<std::uint32_t> v(values_.size(), 0);
  for (PointId u = 0; u < sub.size(); ++u) {
    if (sub.in_domain(u)) {
      if (values_[u] == 0) {
        throw ValidationError("rank missing on domain point '" + sub.label(u) + "'");
      }
      v[u] = values_[u];
    }
  }
  return RankFunction(sub, std::move(v));
}

}  // namespace pardyn
