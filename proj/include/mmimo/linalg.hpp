#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <vector>

namespace mmimo {

using cplx = std::complex<double>;

/// Dense row-major complex matrix. Holds H (K x M), beamformers (M x K) and
/// Gram matrices (K x K).
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols);
  /// Takes ownership of `entries` (row-major). Throws std::invalid_argument on
  /// a size mismatch or a non-finite entry.
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries);
  ComplexMatrix(std::initializer_list<std::initializer_list<cplx>> rows);

  static ComplexMatrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  cplx& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const cplx& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  std::span<cplx> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const cplx> row(std::size_t i) const {
    return {data_.data() + i * cols_, cols_};
  }

  std::span<const cplx> data() const noexcept { return data_; }
  std::span<cplx> data() noexcept { return data_; }

  bool operator==(const ComplexMatrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cplx> data_;
};

/// Raised by invert_hpd when a Cholesky pivot drops below the floor.
class NotPositiveDefinite : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

ComplexMatrix hermitian(const ComplexMatrix& a);

/// Throws std::invalid_argument when a.cols() != b.rows().
ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b);

/// a * a^H, the K x K Gram matrix of the rows of `a`. Exactly Hermitian.
ComplexMatrix gram_rows(const ComplexMatrix& a);

/// Inverse of a Hermitian positive-definite matrix via G = L L^H.
///
/// Preconditions are checked: `g` must be square and Hermitian to 1e-10
/// relative to its largest entry, otherwise std::invalid_argument. A pivot
/// below 1e-12 times the largest diagonal entry raises NotPositiveDefinite.
/// The returned inverse is exactly Hermitian.
ComplexMatrix invert_hpd(const ComplexMatrix& g);

double frobenius_norm_sq(const ComplexMatrix& a);

/// Squared Euclidean norm of column `j`; std::out_of_range if j >= cols.
double column_norm_sq(const ComplexMatrix& a, std::size_t j);

/// Frobenius norm of (a - b); dimensions must agree.
double frobenius_distance(const ComplexMatrix& a, const ComplexMatrix& b);

}  // namespace mmimo
