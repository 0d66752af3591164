#include "mmimo/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace mmimo {

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (data_.size() != rows * cols) {
    throw std::invalid_argument("ComplexMatrix: entries length " + std::to_string(data_.size()) +
                                " != rows*cols " + std::to_string(rows * cols));
  }
  for (const cplx& z : data_) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
      throw std::invalid_argument("ComplexMatrix: non-finite entry");
  }
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<cplx>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw std::invalid_argument("ComplexMatrix: ragged initializer");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix eye(n, n);
  for (std::size_t i = 0; i < n; ++i) eye(i, i) = 1.0;
  return eye;
}

ComplexMatrix hermitian(const ComplexMatrix& a) {
  ComplexMatrix out(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(j, i) = std::conj(a(i, j));
  return out;
}

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) {
    throw std::invalid_argument("matmul: dimension mismatch (" + std::to_string(a.rows()) + "x" +
                                std::to_string(a.cols()) + ") * (" + std::to_string(b.rows()) +
                                "x" + std::to_string(b.cols()) + ")");
  }
  ComplexMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    auto crow = c.row(i);
    for (std::size_t p = 0; p < a.cols(); ++p) {
      const cplx aip = a(i, p);
      auto brow = b.row(p);
      for (std::size_t j = 0; j < b.cols(); ++j) crow[j] += aip * brow[j];
    }
  }
  return c;
}

ComplexMatrix gram_rows(const ComplexMatrix& a) {
  const std::size_t n = a.rows();
  ComplexMatrix g(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    auto ri = a.row(i);
    for (std::size_t j = i; j < n; ++j) {
      auto rj = a.row(j);
      cplx s = 0.0;
      for (std::size_t p = 0; p < a.cols(); ++p) s += ri[p] * std::conj(rj[p]);
      if (i == j) s = s.real();
      g(i, j) = s;
      g(j, i) = std::conj(s);
    }
  }
  return g;
}

ComplexMatrix invert_hpd(const ComplexMatrix& g) {
  const std::size_t n = g.rows();
  if (g.cols() != n) throw std::invalid_argument("invert_hpd: matrix is not square");

  double max_abs = 0.0;
  double max_diag = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    max_diag = std::max(max_diag, g(i, i).real());
    for (std::size_t j = 0; j < n; ++j) max_abs = std::max(max_abs, std::abs(g(i, j)));
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j)
      if (std::abs(g(i, j) - std::conj(g(j, i))) > 1e-10 * max_abs)
        throw std::invalid_argument("invert_hpd: matrix is not Hermitian");

  const double floor = 1e-12 * max_diag;
  if (!(max_diag > 0.0)) throw NotPositiveDefinite("invert_hpd: not positive definite (zero diagonal)");

  // Lower-triangular factor, row-major, upper part unused.
  ComplexMatrix l(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    double d = g(j, j).real();
    for (std::size_t p = 0; p < j; ++p) d -= std::norm(l(j, p));
    if (!(d > floor)) {
      throw NotPositiveDefinite("invert_hpd: not positive definite (pivot " + std::to_string(j) +
                                " below floor)");
    }
    const double ljj = std::sqrt(d);
    l(j, j) = ljj;
    for (std::size_t i = j + 1; i < n; ++i) {
      cplx s = g(i, j);
      for (std::size_t p = 0; p < j; ++p) s -= l(i, p) * std::conj(l(j, p));
      l(i, j) = s / ljj;
    }
  }

  // X = L^{-1} (lower triangular), by forward substitution on the identity.
  ComplexMatrix x(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    x(j, j) = 1.0 / l(j, j).real();
    for (std::size_t i = j + 1; i < n; ++i) {
      cplx s = 0.0;
      for (std::size_t p = j; p < i; ++p) s -= l(i, p) * x(p, j);
      x(i, j) = s / l(i, i).real();
    }
  }

  // G^{-1} = X^H X; X is lower triangular so the sum starts at max(i, j).
  ComplexMatrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      cplx s = 0.0;
      for (std::size_t p = j; p < n; ++p) s += std::conj(x(p, i)) * x(p, j);
      if (i == j) s = s.real();
      inv(i, j) = s;
      inv(j, i) = std::conj(s);
    }
  }
  return inv;
}

double frobenius_norm_sq(const ComplexMatrix& a) {
  double s = 0.0;
  for (const cplx& z : a.data()) s += std::norm(z);
  return s;
}

double column_norm_sq(const ComplexMatrix& a, std::size_t j) {
  if (j >= a.cols())
    throw std::out_of_range("column_norm_sq: column " + std::to_string(j) + " out of range");
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) s += std::norm(a(i, j));
  return s;
}

double frobenius_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("frobenius_distance: dimension mismatch");
  double s = 0.0;
  auto da = a.data();
  auto db = b.data();
  for (std::size_t i = 0; i < da.size(); ++i) s += std::norm(da[i] - db[i]);
  return std::sqrt(s);
}

}  // namespace mmimo
