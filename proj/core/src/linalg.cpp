#include "pardyn/linalg.hpp"

#include "pardyn/error.hpp"

#include <deque>

namespace pardyn {

MatrixSpan::Vector MatrixSpan::flatten(const Matrix& m) const {
  if (m.size() != n_) {
    throw ValidationError("matrix size does not match the span");
  }
  Vector v;
  for (std::size_t i = 0; i < n_; ++i) {
    for (const auto& [j, x] : m.row(i)) {
      v.emplace_hint(v.end(), i * n_ + j, x);
    }
  }
  return v;
}

void MatrixSpan::reduce(Vector& v) const {
  while (!v.empty()) {
    const auto lead = v.begin();
    const auto p = pivots_.find(lead->first);
    if (p == pivots_.end()) {
      return;
    }
    const Complex factor = lead->second;
    for (const auto& [idx, x] : p->second) {
      auto [it, inserted] = v.try_emplace(idx, -(factor * x));
      if (!inserted) {
        it->second -= factor * x;
        if (it->second.is_zero()) {
          v.erase(it);
        }
      }
    }
  }
}

bool MatrixSpan::insert(const Matrix& m) {
  Vector v = flatten(m);
  reduce(v);
  if (v.empty()) {
    return false;
  }
  const Complex lead = v.begin()->second;
  for (auto& [idx, x] : v) {
    x /= lead;
  }
  pivots_.emplace(v.begin()->first, std::move(v));
  independent_.push_back(m);
  return true;
}

bool MatrixSpan::contains(const Matrix& m) const {
  Vector v = flatten(m);
  reduce(v);
  return v.empty();
}

MatrixSpan generated_algebra(std::size_t n, const std::vector<Matrix>& generators) {
  MatrixSpan span(n);
  const std::size_t full = n * n;
  std::deque<Matrix> queue;
  if (Matrix one = Matrix::identity(n); span.insert(one)) {
    queue.push_back(std::move(one));
  }
  // Left multiplication by generators closes span{words} since every word is
  // a generator times a shorter word.
  while (!queue.empty() && span.dimension() < full) {
    const Matrix b = std::move(queue.front());
    queue.pop_front();
    for (const auto& g : generators) {
      Matrix c = g * b;
      if (span.insert(c)) {
        queue.push_back(std::move(c));
        if (span.dimension() == full) {
          break;
        }
      }
    }
  }
  return span;
}

}  // namespace pardyn
