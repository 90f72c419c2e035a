#include "sbarc/fp.hpp"

#include <cassert>

namespace sbarc {

bool is_prime(uint32_t n) {
  if (n < 2) return false;
  for (uint32_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

uint32_t fp_inverse(uint32_t a, uint32_t p) {
  // Fermat: a^(p-2) mod p.
  uint64_t base = a % p, result = 1;
  for (uint32_t e = p - 2; e; e >>= 1) {
    if (e & 1) result = result * base % p;
    base = base * base % p;
  }
  return uint32_t(result);
}

FpMatrix::FpMatrix(int rows, int cols, uint32_t p)
    : rows_(rows), cols_(cols), p_(p), data_(size_t(rows) * cols, 0) {
  if (p < 2 || p >= (1u << 16) || !is_prime(p))
    throw std::invalid_argument("FpMatrix: characteristic must be a prime < 2^16");
  if (rows < 0 || cols < 0) throw std::invalid_argument("FpMatrix: negative shape");
}

FpMatrix FpMatrix::identity(int n, uint32_t p) {
  FpMatrix m(n, n, p);
  for (int i = 0; i < n; ++i) m.set(i, i, 1);
  return m;
}

void FpMatrix::set(int r, int c, int64_t value) {
  int64_t v = value % int64_t(p_);
  if (v < 0) v += p_;
  data_[size_t(r) * cols_ + c] = uint32_t(v);
}

FpMatrix FpMatrix::operator*(const FpMatrix& other) const {
  if (cols_ != other.rows_ || p_ != other.p_)
    throw std::invalid_argument("FpMatrix: incompatible product shapes");
  FpMatrix out(rows_, other.cols_, p_);
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) {
      uint64_t a = at(i, k);
      if (!a) continue;
      for (int j = 0; j < other.cols_; ++j) {
        uint64_t v = out.at(i, j) + a * other.at(k, j) % p_;
        out.data_[size_t(i) * out.cols_ + j] = uint32_t(v % p_);
      }
    }
  return out;
}

FpMatrix FpMatrix::operator+(const FpMatrix& other) const {
  if (rows_ != other.rows_ || cols_ != other.cols_ || p_ != other.p_)
    throw std::invalid_argument("FpMatrix: incompatible sum shapes");
  FpMatrix out(rows_, cols_, p_);
  for (size_t i = 0; i < data_.size(); ++i)
    out.data_[i] = uint32_t((uint64_t(data_[i]) + other.data_[i]) % p_);
  return out;
}

FpMatrix FpMatrix::operator-(const FpMatrix& other) const {
  if (rows_ != other.rows_ || cols_ != other.cols_ || p_ != other.p_)
    throw std::invalid_argument("FpMatrix: incompatible difference shapes");
  FpMatrix out(rows_, cols_, p_);
  for (size_t i = 0; i < data_.size(); ++i)
    out.data_[i] = uint32_t((uint64_t(data_[i]) + p_ - other.data_[i]) % p_);
  return out;
}

bool FpMatrix::is_zero() const {
  for (uint32_t v : data_)
    if (v) return false;
  return true;
}

FpMatrix FpMatrix::cols_selected(const std::vector<int>& which) const {
  FpMatrix out(rows_, int(which.size()), p_);
  for (int j = 0; j < int(which.size()); ++j)
    for (int i = 0; i < rows_; ++i) out.set(i, j, at(i, which[j]));
  return out;
}

FpMatrix FpMatrix::hstack(const FpMatrix& a, const FpMatrix& b) {
  if (a.rows() != b.rows() || a.p() != b.p())
    throw std::invalid_argument("FpMatrix: hstack shape mismatch");
  FpMatrix out(a.rows(), a.cols() + b.cols(), a.p());
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) out.set(i, j, a.at(i, j));
    for (int j = 0; j < b.cols(); ++j) out.set(i, a.cols() + j, b.at(i, j));
  }
  return out;
}

namespace {

// Row echelon in place; returns pivot (row, col) pairs in elimination order.
std::vector<std::pair<int, int>> echelon(std::vector<uint32_t>& a, int rows,
                                         int cols, uint32_t p) {
  std::vector<std::pair<int, int>> pivots;
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int pr = -1;
    for (int i = r; i < rows; ++i)
      if (a[size_t(i) * cols + c]) { pr = i; break; }
    if (pr < 0) continue;
    if (pr != r)
      for (int j = c; j < cols; ++j) std::swap(a[size_t(pr) * cols + j], a[size_t(r) * cols + j]);
    uint64_t inv = fp_inverse(a[size_t(r) * cols + c], p);
    for (int j = c; j < cols; ++j)
      a[size_t(r) * cols + j] = uint32_t(inv * a[size_t(r) * cols + j] % p);
    for (int i = 0; i < rows; ++i) {
      if (i == r) continue;
      uint64_t f = a[size_t(i) * cols + c];
      if (!f) continue;
      for (int j = c; j < cols; ++j) {
        uint64_t v = a[size_t(i) * cols + j] + (p - uint32_t(f * a[size_t(r) * cols + j] % p));
        a[size_t(i) * cols + j] = uint32_t(v % p);
      }
    }
    pivots.emplace_back(r, c);
    ++r;
  }
  return pivots;
}

}  // namespace

int FpMatrix::rank() const {
  auto a = data_;
  return int(echelon(a, rows_, cols_, p_).size());
}

FpMatrix FpMatrix::kernel_basis() const {
  auto a = data_;
  auto pivots = echelon(a, rows_, cols_, p_);
  std::vector<bool> is_pivot(cols_, false);
  for (auto& [r, c] : pivots) is_pivot[c] = true;
  std::vector<int> free_cols;
  for (int c = 0; c < cols_; ++c)
    if (!is_pivot[c]) free_cols.push_back(c);
  FpMatrix ker(cols_, int(free_cols.size()), p_);
  for (int k = 0; k < int(free_cols.size()); ++k) {
    int fc = free_cols[k];
    ker.set(fc, k, 1);
    for (auto& [r, c] : pivots)
      ker.set(c, k, int64_t(p_) - int64_t(a[size_t(r) * cols_ + fc]));
  }
  return ker;
}

std::vector<int> FpMatrix::pivot_columns() const {
  auto a = data_;
  auto pivots = echelon(a, rows_, cols_, p_);
  std::vector<int> out;
  out.reserve(pivots.size());
  for (auto& [r, c] : pivots) out.push_back(c);
  return out;
}

FpMatrix FpMatrix::image_basis() const { return cols_selected(pivot_columns()); }

std::optional<FpMatrix> FpMatrix::solve(const FpMatrix& rhs) const {
  if (rhs.rows() != rows_ || rhs.p() != p_)
    throw std::invalid_argument("FpMatrix: solve shape mismatch");
  FpMatrix aug = hstack(*this, rhs);
  auto a = aug.data_;
  auto pivots = echelon(a, aug.rows_, aug.cols_, p_);
  for (auto& [r, c] : pivots)
    if (c >= cols_) return std::nullopt;  // rhs column outside the image
  FpMatrix x(cols_, rhs.cols(), p_);
  for (auto& [r, c] : pivots)
    for (int j = 0; j < rhs.cols(); ++j)
      x.set(c, j, a[size_t(r) * aug.cols_ + cols_ + j]);
  return x;
}

QuotientBasis quotient_basis(int dim, const FpMatrix& spanning) {
  if (spanning.rows() != dim)
    throw std::invalid_argument("quotient_basis: spanning rows != dim");
  uint32_t p = spanning.p();
  // Row-reduce the transpose so each subspace basis vector is a row.
  std::vector<uint32_t> a(size_t(spanning.cols()) * dim);
  for (int i = 0; i < spanning.cols(); ++i)
    for (int j = 0; j < dim; ++j) a[size_t(i) * dim + j] = spanning.at(j, i);
  auto pivots = echelon(a, spanning.cols(), dim, p);
  std::vector<bool> is_pivot(dim, false);
  for (auto& [r, c] : pivots) is_pivot[c] = true;
  QuotientBasis out;
  for (int c = 0; c < dim; ++c)
    if (!is_pivot[c]) out.complement.push_back(c);
  out.projection = FpMatrix(int(out.complement.size()), dim, p);
  for (int i = 0; i < int(out.complement.size()); ++i) {
    int cc = out.complement[i];
    out.projection.set(i, cc, 1);
    // v mod span: subtract v_{pivot} * (reduced row) from v.
    for (auto& [r, c] : pivots)
      out.projection.set(i, c, int64_t(p) - int64_t(a[size_t(r) * dim + cc]));
  }
  return out;
}

}  // namespace sbarc
