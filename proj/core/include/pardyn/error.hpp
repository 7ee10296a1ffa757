#pragma once

#include <stdexcept>
#include <string>

namespace pardyn {

/// Input or precondition violation (malformed file, non-injective map,
/// unknown point, set not invariant, cycle where a chain is required, ...).
class ValidationError : public std::invalid_argument {
public:
  explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace pardyn
