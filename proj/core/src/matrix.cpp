#include "pardyn/matrix.hpp"

#include "pardyn/error.hpp"

#include <stdexcept>

namespace pardyn {

namespace {

void require_same_size(std::size_t a, std::size_t b) {
  if (a != b) {
    throw ValidationError("matrix size mismatch: " + std::to_string(a) + " vs " +
                          std::to_string(b));
  }
}

void accumulate(Matrix::Row& row, std::size_t j, const Complex& v) {
  if (v.is_zero()) {
    return;
  }
  auto [it, inserted] = row.try_emplace(j, v);
  if (!inserted) {
    it->second += v;
    if (it->second.is_zero()) {
      row.erase(it);
    }
  }
}

}  // namespace

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n);
  for (std::size_t i = 0; i < n; ++i) {
    m.rows_[i].emplace(i, Complex(1));
  }
  return m;
}

Matrix Matrix::unit(std::size_t n, std::size_t i, std::size_t j) {
  Matrix m(n);
  m.set(i, j, Complex(1));
  return m;
}

std::size_t Matrix::nonzeros() const {
  std::size_t c = 0;
  for (const auto& r : rows_) {
    c += r.size();
  }
  return c;
}

Complex Matrix::at(std::size_t i, std::size_t j) const {
  const auto& r = rows_.at(i);
  const auto it = r.find(j);
  return it == r.end() ? Complex() : it->second;
}

void Matrix::set(std::size_t i, std::size_t j, const Complex& v) {
  if (i >= size() || j >= size()) {
    throw std::out_of_range("matrix index out of range");
  }
  if (v.is_zero()) {
    rows_[i].erase(j);
  } else {
    rows_[i][j] = v;
  }
}

void Matrix::add(std::size_t i, std::size_t j, const Complex& v) {
  if (i >= size() || j >= size()) {
    throw std::out_of_range("matrix index out of range");
  }
  accumulate(rows_[i], j, v);
}

Matrix Matrix::adjoint() const {
  Matrix out(size());
  for (std::size_t i = 0; i < size(); ++i) {
    for (const auto& [j, v] : rows_[i]) {
      out.rows_[j].emplace(i, v.conj());
    }
  }
  return out;
}

Complex Matrix::trace() const {
  Complex t;
  for (std::size_t i = 0; i < size(); ++i) {
    const auto it = rows_[i].find(i);
    if (it != rows_[i].end()) {
      t += it->second;
    }
  }
  return t;
}

Matrix& Matrix::operator+=(const Matrix& o) {
  require_same_size(size(), o.size());
  for (std::size_t i = 0; i < size(); ++i) {
    for (const auto& [j, v] : o.rows_[i]) {
      accumulate(rows_[i], j, v);
    }
  }
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& o) {
  require_same_size(size(), o.size());
  for (std::size_t i = 0; i < size(); ++i) {
    for (const auto& [j, v] : o.rows_[i]) {
      accumulate(rows_[i], j, -v);
    }
  }
  return *this;
}

Matrix& Matrix::operator*=(const Complex& s) {
  if (s.is_zero()) {
    for (auto& r : rows_) {
      r.clear();
    }
    return *this;
  }
  for (auto& r : rows_) {
    for (auto& [j, v] : r) {
      v *= s;
    }
  }
  return *this;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  require_same_size(a.size(), b.size());
  Matrix out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (const auto& [k, x] : a.rows_[i]) {
      for (const auto& [j, y] : b.rows_[k]) {
        accumulate(out.rows_[i], j, x * y);
      }
    }
  }
  return out;
}

BlockMatrix BlockMatrix::zero(const std::vector<std::size_t>& sizes) {
  std::vector<Matrix> blocks;
  blocks.reserve(sizes.size());
  for (auto n : sizes) {
    blocks.emplace_back(n);
  }
  return BlockMatrix(std::move(blocks));
}

BlockMatrix BlockMatrix::identity(const std::vector<std::size_t>& sizes) {
  std::vector<Matrix> blocks;
  blocks.reserve(sizes.size());
  for (auto n : sizes) {
    blocks.push_back(Matrix::identity(n));
  }
  return BlockMatrix(std::move(blocks));
}

std::vector<std::size_t> BlockMatrix::sizes() const {
  std::vector<std::size_t> s;
  s.reserve(blocks_.size());
  for (const auto& b : blocks_) {
    s.push_back(b.size());
  }
  return s;
}

BlockMatrix BlockMatrix::adjoint() const {
  std::vector<Matrix> blocks;
  blocks.reserve(blocks_.size());
  for (const auto& b : blocks_) {
    blocks.push_back(b.adjoint());
  }
  return BlockMatrix(std::move(blocks));
}

bool BlockMatrix::is_zero() const {
  for (const auto& b : blocks_) {
    if (!b.is_zero()) {
      return false;
    }
  }
  return true;
}

namespace {

void require_same_shape(const BlockMatrix& a, const BlockMatrix& b) {
  if (a.sizes() != b.sizes()) {
    throw ValidationError("block shape mismatch");
  }
}

}  // namespace

BlockMatrix& BlockMatrix::operator+=(const BlockMatrix& o) {
  require_same_shape(*this, o);
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    blocks_[b] += o.blocks_[b];
  }
  return *this;
}

BlockMatrix& BlockMatrix::operator-=(const BlockMatrix& o) {
  require_same_shape(*this, o);
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    blocks_[b] -= o.blocks_[b];
  }
  return *this;
}

BlockMatrix& BlockMatrix::operator*=(const Complex& s) {
  for (auto& b : blocks_) {
    b *= s;
  }
  return *this;
}

BlockMatrix operator*(const BlockMatrix& a, const BlockMatrix& b) {
  require_same_shape(a, b);
  std::vector<Matrix> blocks;
  blocks.reserve(a.blocks_.size());
  for (std::size_t i = 0; i < a.blocks_.size(); ++i) {
    blocks.push_back(a.blocks_[i] * b.blocks_[i]);
  }
  return BlockMatrix(std::move(blocks));
}

}  // namespace pardyn
