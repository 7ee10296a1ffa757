#pragma once

#include "pardyn/matrix.hpp"

#include <cstddef>
#include <map>
#include <vector>

namespace pardyn {

/// Incrementally maintained linear span of n x n matrices over the Gaussian
/// rationals, kept in semi-echelon form (distinct leading indices).
class MatrixSpan {
public:
  explicit MatrixSpan(std::size_t n) : n_(n) {}

  /// Adds `m` if it is independent of the current span; returns whether it was.
  bool insert(const Matrix& m);
  bool contains(const Matrix& m) const;
  std::size_t dimension() const { return pivots_.size(); }

  /// The inserted matrices that were independent, in insertion order.
  const std::vector<Matrix>& independent() const { return independent_; }

private:
  using Vector = std::map<std::size_t, Complex>;
  Vector flatten(const Matrix& m) const;
  void reduce(Vector& v) const;

  std::size_t n_;
  std::map<std::size_t, Vector> pivots_;  // leading index -> vector with leading entry 1
  std::vector<Matrix> independent_;
};

/// Span of all words in `generators` including the empty word (the unital
/// algebra they generate). Stops early once the span reaches n^2.
MatrixSpan generated_algebra(std::size_t n, const std::vector<Matrix>& generators);

}  // namespace pardyn
