#pragma once

// Sparse square matrices over the Gaussian rationals, and block-diagonal
// direct sums of them. Zero entries are never stored.

#include "pardyn/rational.hpp"

#include <cstddef>
#include <map>
#include <vector>

namespace pardyn {

class Matrix {
public:
  using Row = std::map<std::size_t, Complex>;

  Matrix() = default;
  explicit Matrix(std::size_t n) : rows_(n) {}

  static Matrix identity(std::size_t n);
  /// Matrix unit e_{ij}.
  static Matrix unit(std::size_t n, std::size_t i, std::size_t j);

  std::size_t size() const { return rows_.size(); }
  std::size_t nonzeros() const;
  bool is_zero() const { return nonzeros() == 0; }

  Complex at(std::size_t i, std::size_t j) const;
  void set(std::size_t i, std::size_t j, const Complex& v);
  void add(std::size_t i, std::size_t j, const Complex& v);
  const Row& row(std::size_t i) const { return rows_[i]; }

  Matrix adjoint() const;
  Complex trace() const;

  Matrix& operator+=(const Matrix& o);
  Matrix& operator-=(const Matrix& o);
  Matrix& operator*=(const Complex& s);

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(Matrix a, const Complex& s) { return a *= s; }
  friend Matrix operator*(const Complex& s, Matrix a) { return a *= s; }
  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend bool operator==(const Matrix& a, const Matrix& b) { return a.rows_ == b.rows_; }
  friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

private:
  std::vector<Row> rows_;
};

/// Element of a direct sum of full matrix algebras, one Matrix per block.
class BlockMatrix {
public:
  BlockMatrix() = default;
  explicit BlockMatrix(std::vector<Matrix> blocks) : blocks_(std::move(blocks)) {}

  static BlockMatrix zero(const std::vector<std::size_t>& sizes);
  static BlockMatrix identity(const std::vector<std::size_t>& sizes);

  std::size_t block_count() const { return blocks_.size(); }
  const Matrix& block(std::size_t b) const { return blocks_[b]; }
  Matrix& block(std::size_t b) { return blocks_[b]; }
  const std::vector<Matrix>& blocks() const { return blocks_; }
  std::vector<std::size_t> sizes() const;

  BlockMatrix adjoint() const;
  bool is_zero() const;

  BlockMatrix& operator+=(const BlockMatrix& o);
  BlockMatrix& operator-=(const BlockMatrix& o);
  BlockMatrix& operator*=(const Complex& s);

  friend BlockMatrix operator+(BlockMatrix a, const BlockMatrix& b) { return a += b; }
  friend BlockMatrix operator-(BlockMatrix a, const BlockMatrix& b) { return a -= b; }
  friend BlockMatrix operator*(BlockMatrix a, const Complex& s) { return a *= s; }
  friend BlockMatrix operator*(const Complex& s, BlockMatrix a) { return a *= s; }
  friend BlockMatrix operator*(const BlockMatrix& a, const BlockMatrix& b);
  friend bool operator==(const BlockMatrix& a, const BlockMatrix& b) {
    return a.blocks_ == b.blocks_;
  }
  friend bool operator!=(const BlockMatrix& a, const BlockMatrix& b) { return !(a == b); }

private:
  std::vector<Matrix> blocks_;
};

}  // namespace pardyn
