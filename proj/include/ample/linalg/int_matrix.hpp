#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace ample::linalg {

using Integer = mpz_class;

/// Dense integer matrix with arbitrary-precision entries, stored row-major.
///
/// A rows x cols matrix is read as a homomorphism Z^cols -> Z^rows. Either
/// dimension may be zero; such matrices are the zero maps to or from the
/// trivial group.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols);
  IntMatrix(std::size_t rows, std::size_t cols, std::vector<Integer> entries);

  static IntMatrix identity(std::size_t n);
  static IntMatrix diagonal(std::span<const Integer> diag);
  static IntMatrix from_rows(const std::vector<std::vector<long>>& rows);
  static IntMatrix from_rows(const std::vector<std::vector<Integer>>& rows, std::size_t cols);
  static IntMatrix column(std::span<const Integer> values);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Integer& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  const Integer& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

  std::span<Integer> row(std::size_t r) { return {entries_.data() + r * cols_, cols_}; }
  std::span<const Integer> row(std::size_t r) const { return {entries_.data() + r * cols_, cols_}; }
  std::span<const Integer> entries() const { return entries_; }

  std::vector<Integer> column_vector(std::size_t c) const;

  IntMatrix transpose() const;
  bool is_zero() const;
  bool is_square() const { return rows_ == cols_; }

  /// Columns [first, first + count).
  IntMatrix columns(std::size_t first, std::size_t count) const;
  /// Rows [first, first + count).
  IntMatrix rows_block(std::size_t first, std::size_t count) const;

  friend bool operator==(const IntMatrix& a, const IntMatrix& b);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> entries_;
};

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
IntMatrix operator+(const IntMatrix& a, const IntMatrix& b);
IntMatrix operator-(const IntMatrix& a, const IntMatrix& b);
IntMatrix operator*(const Integer& s, const IntMatrix& m);
std::vector<Integer> operator*(const IntMatrix& m, std::span<const Integer> v);

/// [a | b]; row counts must agree.
IntMatrix hconcat(const IntMatrix& a, const IntMatrix& b);
/// [a ; b]; column counts must agree.
IntMatrix vconcat(const IntMatrix& a, const IntMatrix& b);
/// Block-diagonal sum a (+) b.
IntMatrix block_diagonal(const IntMatrix& a, const IntMatrix& b);
IntMatrix kronecker(const IntMatrix& a, const IntMatrix& b);
IntMatrix power(const IntMatrix& m, std::size_t exponent);

/// Exact determinant (fraction-free Bareiss elimination).
Integer determinant(const IntMatrix& m);

std::string to_string(const IntMatrix& m);

}  // namespace ample::linalg
