#include "graphmass/tensor.hpp"

#include <cmath>
#include <utility>

#include "graphmass/errors.hpp"

namespace graphmass {

Matrix Matrix::identity(int dim) {
  Matrix r(dim, dim);
  for (int i = 0; i < dim; ++i) r(i, i) = 1.0;
  return r;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  assert(a.cols() == b.rows());
  Matrix r(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      for (int j = 0; j < b.cols(); ++j) r(i, j) += aik * b(k, j);
    }
  return r;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
  Matrix r(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) r(i, j) = a(i, j) + b(i, j);
  return r;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
  Matrix r(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) r(i, j) = a(i, j) - b(i, j);
  return r;
}

Matrix transpose(const Matrix& a) {
  Matrix r(a.cols(), a.rows());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) r(j, i) = a(i, j);
  return r;
}

double max_abs(const Matrix& a) {
  double r = 0.0;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) r = std::max(r, std::abs(a(i, j)));
  return r;
}

SymMatrix SymMatrix::identity(int dim) {
  SymMatrix r(dim);
  for (int i = 0; i < dim; ++i) r.set(i, i, 1.0);
  return r;
}

SymMatrix SymMatrix::diagonal(std::span<const double> entries) {
  SymMatrix r(static_cast<int>(entries.size()));
  for (int i = 0; i < r.dim(); ++i) r.set(i, i, entries[i]);
  return r;
}

SymMatrix SymMatrix::from(const Matrix& a) {
  assert(a.rows() == a.cols());
  SymMatrix r(a.rows());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = i; j < a.cols(); ++j) r.set(i, j, 0.5 * (a(i, j) + a(j, i)));
  return r;
}

SpdInverse invert_spd(const SymMatrix& a) {
  const int n = a.dim();
  Matrix l(n, n);
  double det = 1.0;
  for (int j = 0; j < n; ++j) {
    double d = a(j, j);
    for (int k = 0; k < j; ++k) d -= l(j, k) * l(j, k);
    if (!(d > 0.0) || !std::isfinite(d)) throw NotSpdError();
    const double ljj = std::sqrt(d);
    l(j, j) = ljj;
    det *= d;
    for (int i = j + 1; i < n; ++i) {
      double s = a(i, j);
      for (int k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
      l(i, j) = s / ljj;
    }
  }

  // L⁻¹ by forward substitution, then A⁻¹ = L⁻ᵀ L⁻¹.
  Matrix linv(n, n);
  for (int j = 0; j < n; ++j) {
    linv(j, j) = 1.0 / l(j, j);
    for (int i = j + 1; i < n; ++i) {
      double s = 0.0;
      for (int k = j; k < i; ++k) s -= l(i, k) * linv(k, j);
      linv(i, j) = s / l(i, i);
    }
  }
  SymMatrix inv(n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      double s = 0.0;
      for (int k = j; k < n; ++k) s += linv(k, i) * linv(k, j);
      inv.set(i, j, s);
    }
  return {inv, det};
}

double determinant_lu(const Matrix& a) {
  assert(a.rows() == a.cols());
  const int n = a.rows();
  Matrix w = a;
  double det = 1.0;
  for (int c = 0; c < n; ++c) {
    int p = c;
    for (int r = c + 1; r < n; ++r)
      if (std::abs(w(r, c)) > std::abs(w(p, c))) p = r;
    if (w(p, c) == 0.0) return 0.0;
    if (p != c) {
      for (int j = 0; j < n; ++j) std::swap(w(p, j), w(c, j));
      det = -det;
    }
    det *= w(c, c);
    for (int r = c + 1; r < n; ++r) {
      const double f = w(r, c) / w(c, c);
      for (int j = c; j < n; ++j) w(r, j) -= f * w(c, j);
    }
  }
  return det;
}

}  // namespace graphmass
