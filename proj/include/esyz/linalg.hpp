#pragma once

// Exact linear algebra over a prime field.
//
// Residues are stored as doubles in [0, p). Bulk updates go through a
// floating-point GEMM: with p < 2^25 every partial dot product below is an
// integer of magnitude < 2^53, so the result is exact and a final reduction
// mod p recovers the field value.

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "esyz/field.hpp"

namespace esyz::linalg {

inline double reduce(double x, double p, double inv_p) {
  double r = x - std::floor(x * inv_p) * p;
  if (r < 0) r += p;
  if (r >= p) r -= p;
  return r;
}

inline void reduce_all(std::span<double> v, std::uint32_t prime) {
  const double p = prime, inv_p = 1.0 / p;
  for (double& x : v) x = reduce(x, p, inv_p);
}

/// Largest inner dimension for which a dgemm accumulation stays exact when
/// the accumulator starts in [0, p).
inline std::size_t exact_inner_chunk(std::uint32_t prime) {
  const double pm1 = static_cast<double>(prime) - 1.0;
  const double limit = 9007199254740992.0 - prime;  // 2^53 - p
  return std::max<std::size_t>(1, static_cast<std::size_t>(limit / (pm1 * pm1)));
}

/// C (m x n) <- C - A (m x k) * B (k x n)  mod p.  All operands row-major with
/// the given leading dimensions; entries of A, B, C must lie in [0, p).
inline void mul_sub_mod(std::uint32_t prime, std::size_t m, std::size_t n, std::size_t k,
                        const double* a, std::size_t lda, const double* b, std::size_t ldb,
                        double* c, std::size_t ldc) {
  if (m == 0 || n == 0 || k == 0) return;
  using RowMajor = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  using Stride = Eigen::OuterStride<>;
  const std::size_t chunk = exact_inner_chunk(prime);
  const double p = prime, inv_p = 1.0 / p;
  const auto em = static_cast<Eigen::Index>(m), en = static_cast<Eigen::Index>(n);
  Eigen::Map<RowMajor, 0, Stride> cm(c, em, en, Stride(static_cast<Eigen::Index>(ldc)));
  for (std::size_t k0 = 0; k0 < k; k0 += chunk) {
    const auto kc = static_cast<Eigen::Index>(std::min(chunk, k - k0));
    Eigen::Map<const RowMajor, 0, Stride> am(a + k0, em, kc, Stride(static_cast<Eigen::Index>(lda)));
    Eigen::Map<const RowMajor, 0, Stride> bm(b + k0 * ldb, kc, en, Stride(static_cast<Eigen::Index>(ldb)));
    cm.noalias() -= am * bm;
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < n; ++j) c[i * ldc + j] = reduce(c[i * ldc + j], p, inv_p);
  }
}

/// Dense row-major matrix of residues.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  std::span<double> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const double> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
  std::span<double> data() { return data_; }
  std::span<const double> data() const { return data_; }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<double> data_;
};

/// Incrementally maintained reduced row echelon basis of a row space.
///
/// Every stored row has a pivot column holding 1, and every pivot column is
/// zero in all other stored rows. Pivots are chosen as the first nonzero
/// column of each reduced incoming row, taking rows in the order given, so
/// the basis is a deterministic function of the input sequence.
class RowEchelon {
 public:
  RowEchelon(const PrimeField& field, std::size_t cols) : field_(field), cols_(cols) {}

  std::size_t cols() const noexcept { return cols_; }
  std::size_t rank() const noexcept { return pivots_.size(); }
  const std::vector<std::size_t>& pivots() const noexcept { return pivots_; }
  std::span<const double> row(std::size_t i) const { return {basis_.data() + i * cols_, cols_}; }
  const PrimeField& field() const noexcept { return field_; }

  /// Absorbs `nrows` rows stored contiguously in `block` (clobbered). Stops
  /// early, possibly mid-block, once the rank reaches `rank_limit`.
  std::size_t absorb(std::span<double> block, std::size_t nrows,
                     std::size_t rank_limit = static_cast<std::size_t>(-1)) {
    if (nrows == 0 || rank() >= rank_limit) return rank();
    const std::uint32_t p = field_.prime();
    const std::size_t r0 = rank();

    if (r0 > 0) {
      std::vector<double> gathered(nrows * r0);
      for (std::size_t i = 0; i < nrows; ++i)
        for (std::size_t k = 0; k < r0; ++k) gathered[i * r0 + k] = block[i * cols_ + pivots_[k]];
      mul_sub_mod(p, nrows, cols_, r0, gathered.data(), r0, basis_.data(), cols_, block.data(),
                  cols_);
    }

    // Eliminate inside the block; new rows are kept mutually reduced.
    std::vector<std::size_t> fresh;  // indices into block of accepted rows
    std::vector<std::size_t> fresh_piv;
    const double dp = p, inv_p = 1.0 / dp;
    const std::size_t chunk = exact_inner_chunk(p);
    for (std::size_t i = 0; i < nrows && r0 + fresh.size() < rank_limit; ++i) {
      double* r = block.data() + i * cols_;
      if (!fresh.empty()) {
        // Coefficients are read before any update: fresh rows vanish on each
        // other's pivots, so r's pivot entries do not change meanwhile.
        std::vector<double> coeff(fresh.size());
        for (std::size_t t = 0; t < fresh.size(); ++t) coeff[t] = r[fresh_piv[t]];
        std::size_t pending = 0;
        for (std::size_t t = 0; t < fresh.size(); ++t) {
          if (coeff[t] == 0) continue;
          if (pending + 1 >= chunk) {
            for (std::size_t j = 0; j < cols_; ++j) r[j] = reduce(r[j], dp, inv_p);
            pending = 0;
          }
          const double c = coeff[t];
          const double* y = block.data() + fresh[t] * cols_;
          for (std::size_t j = 0; j < cols_; ++j) r[j] -= c * y[j];
          ++pending;
        }
        if (pending)
          for (std::size_t j = 0; j < cols_; ++j) r[j] = reduce(r[j], dp, inv_p);
      }
      std::size_t c = 0;
      while (c < cols_ && r[c] == 0) ++c;
      if (c == cols_) continue;
      const double s = field_.inv(static_cast<Elem>(r[c]));
      for (std::size_t j = c; j < cols_; ++j) r[j] = reduce(r[j] * s, dp, inv_p);
      for (std::size_t t = 0; t < fresh.size(); ++t) {
        double* y = block.data() + fresh[t] * cols_;
        const double f = y[c];
        if (f == 0) continue;
        for (std::size_t j = 0; j < cols_; ++j) y[j] = reduce(y[j] - f * r[j], dp, inv_p);
      }
      fresh.push_back(i);
      fresh_piv.push_back(c);
    }
    if (fresh.empty()) return rank();

    const std::size_t k = fresh.size();
    std::vector<double> y(k * cols_);
    for (std::size_t t = 0; t < k; ++t)
      std::copy_n(block.data() + fresh[t] * cols_, cols_, y.data() + t * cols_);

    if (r0 > 0) {
      std::vector<double> gathered(r0 * k);
      for (std::size_t i = 0; i < r0; ++i)
        for (std::size_t t = 0; t < k; ++t) gathered[i * k + t] = basis_[i * cols_ + fresh_piv[t]];
      mul_sub_mod(p, r0, cols_, k, gathered.data(), k, y.data(), cols_, basis_.data(), cols_);
    }
    basis_.insert(basis_.end(), y.begin(), y.end());
    pivots_.insert(pivots_.end(), fresh_piv.begin(), fresh_piv.end());
    return rank();
  }

  /// Absorbs a single row given as field elements.
  std::size_t absorb_row(std::span<const double> v) {
    std::vector<double> tmp(v.begin(), v.end());
    return absorb(tmp, 1);
  }

  /// Residual of v after reduction by the basis (zero iff v is in the span).
  std::vector<double> residual(std::span<const double> v) const {
    std::vector<double> out(v.begin(), v.end());
    if (rank() == 0) return out;
    std::vector<double> coeff(rank());
    for (std::size_t k = 0; k < rank(); ++k) coeff[k] = v[pivots_[k]];
    mul_sub_mod(field_.prime(), 1, cols_, rank(), coeff.data(), rank(), basis_.data(), cols_,
                out.data(), cols_);
    return out;
  }

  bool contains(std::span<const double> v) const {
    auto res = residual(v);
    return std::all_of(res.begin(), res.end(), [](double x) { return x == 0; });
  }

 private:
  PrimeField field_;
  std::size_t cols_;
  std::vector<double> basis_;
  std::vector<std::size_t> pivots_;
};

/// Rank of a matrix, processed in row blocks.
inline std::size_t rank(const PrimeField& field, const Matrix& m, std::size_t block_rows = 64) {
  RowEchelon ech(field, m.cols());
  std::vector<double> block;
  const std::size_t limit = std::min(m.rows(), m.cols());
  for (std::size_t i0 = 0; i0 < m.rows() && ech.rank() < limit; i0 += block_rows) {
    const std::size_t nb = std::min(block_rows, m.rows() - i0);
    block.assign(m.data().begin() + i0 * m.cols(), m.data().begin() + (i0 + nb) * m.cols());
    ech.absorb(block, nb, limit);
  }
  return ech.rank();
}

}  // namespace esyz::linalg
