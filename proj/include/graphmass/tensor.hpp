#pragma once

// Small dense containers for pointwise graph geometry. Dimensions are bounded
// by kMaxDim so every object lives on the stack and copies are cheap.

#include <array>
#include <cassert>
#include <span>

namespace graphmass {

inline constexpr int kMaxDim = 8;

class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols) : rows_(rows), cols_(cols) {
    assert(rows >= 0 && rows <= kMaxDim && cols >= 0 && cols <= kMaxDim);
  }

  static Matrix identity(int dim);

  int rows() const noexcept { return rows_; }
  int cols() const noexcept { return cols_; }

  double operator()(int i, int j) const noexcept { return a_[i * kMaxDim + j]; }
  double& operator()(int i, int j) noexcept { return a_[i * kMaxDim + j]; }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::array<double, kMaxDim * kMaxDim> a_{};
};

Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator+(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);
Matrix transpose(const Matrix& a);
double max_abs(const Matrix& a);

// Symmetric matrix; writes go through set() so both triangles stay equal.
class SymMatrix {
 public:
  SymMatrix() = default;
  explicit SymMatrix(int dim) : m_(dim, dim) {}

  static SymMatrix identity(int dim);
  static SymMatrix diagonal(std::span<const double> entries);
  // Symmetrizes (a + aᵀ)/2.
  static SymMatrix from(const Matrix& a);

  int dim() const noexcept { return m_.rows(); }
  double operator()(int i, int j) const noexcept { return m_(i, j); }
  void set(int i, int j, double v) noexcept {
    m_(i, j) = v;
    m_(j, i) = v;
  }
  const Matrix& matrix() const noexcept { return m_; }

 private:
  Matrix m_;
};

struct SpdInverse {
  SymMatrix inverse;
  double determinant = 0.0;
};

// Cholesky factorization; a failed pivot throws NotSpdError.
SpdInverse invert_spd(const SymMatrix& a);

// Reference determinant by Gaussian elimination with partial pivoting.
double determinant_lu(const Matrix& a);

// entries[α][i][j], symmetric in (i, j).
class Tensor3Sym {
 public:
  Tensor3Sym() = default;
  Tensor3Sym(int m, int n) : m_(m), n_(n) {
    assert(m >= 0 && m <= kMaxDim && n >= 0 && n <= kMaxDim);
  }

  int codim() const noexcept { return m_; }
  int dim() const noexcept { return n_; }

  double operator()(int a, int i, int j) const noexcept {
    return e_[(a * kMaxDim + i) * kMaxDim + j];
  }
  void set(int a, int i, int j, double v) noexcept {
    e_[(a * kMaxDim + i) * kMaxDim + j] = v;
    e_[(a * kMaxDim + j) * kMaxDim + i] = v;
  }

 private:
  int m_ = 0;
  int n_ = 0;
  std::array<double, kMaxDim * kMaxDim * kMaxDim> e_{};
};

}  // namespace graphmass
