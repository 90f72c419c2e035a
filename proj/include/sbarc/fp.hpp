#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

namespace sbarc {

bool is_prime(uint32_t n);

/// Dense matrix over the prime field F_p, 2 <= p < 2^16.
/// Entries are stored as residues in [0, p). All operations are exact.
class FpMatrix {
public:
  FpMatrix() = default;
  FpMatrix(int rows, int cols, uint32_t p);

  static FpMatrix identity(int n, uint32_t p);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  uint32_t p() const { return p_; }

  uint32_t at(int r, int c) const { return data_[size_t(r) * cols_ + c]; }
  void set(int r, int c, int64_t value);

  FpMatrix operator*(const FpMatrix& other) const;
  FpMatrix operator+(const FpMatrix& other) const;
  FpMatrix operator-(const FpMatrix& other) const;
  bool operator==(const FpMatrix& other) const = default;

  bool is_zero() const;

  FpMatrix cols_selected(const std::vector<int>& which) const;
  static FpMatrix hstack(const FpMatrix& a, const FpMatrix& b);

  int rank() const;

  /// Columns form a basis of the null space; A * kernel_basis(A) == 0.
  FpMatrix kernel_basis() const;

  /// Indices of a maximal independent subset of columns.
  std::vector<int> pivot_columns() const;

  /// Basis of the column space: the pivot columns.
  FpMatrix image_basis() const;

  /// X with (*this) * X == rhs, or nullopt when some column of rhs is
  /// outside the column space.
  std::optional<FpMatrix> solve(const FpMatrix& rhs) const;

private:
  int rows_ = 0, cols_ = 0;
  uint32_t p_ = 2;
  std::vector<uint32_t> data_;
};

uint32_t fp_inverse(uint32_t a, uint32_t p);

/// Basis of F_p^dim / span(spanning columns): the coordinate indices of a
/// complement of the span, plus the projection matrix onto those
/// coordinates (projection * spanning == 0, projection restricted to the
/// complement coordinates is the identity).
struct QuotientBasis {
  std::vector<int> complement;
  FpMatrix projection;
};
QuotientBasis quotient_basis(int dim, const FpMatrix& spanning);

}  // namespace sbarc
