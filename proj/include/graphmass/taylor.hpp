#pragma once

// Second-order truncated multivariate Taylor arithmetic: each number carries
// its value, gradient and Hessian with respect to up to kMaxDim inputs.
// Derivatives are exact to rounding; there is no expression swell.

#include <array>
#include <cmath>

#include "graphmass/tensor.hpp"

namespace graphmass {

class Taylor2 {
 public:
  Taylor2() = default;

  static Taylor2 constant(int dim, double value) {
    Taylor2 t;
    t.dim_ = dim;
    t.v_ = value;
    return t;
  }
  // The i-th coordinate function evaluated at `value`.
  static Taylor2 variable(int dim, int i, double value) {
    Taylor2 t = constant(dim, value);
    t.g_[i] = 1.0;
    return t;
  }

  int dim() const noexcept { return dim_; }
  double value() const noexcept { return v_; }
  double grad(int i) const noexcept { return g_[i]; }
  double hess(int i, int j) const noexcept { return h_[index(i, j)]; }
  bool is_constant() const noexcept;

  // φ(t) given φ(v), φ'(v), φ''(v).
  Taylor2 chain(double f0, double f1, double f2) const noexcept;

  Taylor2& operator+=(const Taylor2& o) noexcept;
  Taylor2& operator-=(const Taylor2& o) noexcept;
  Taylor2& operator*=(const Taylor2& o) noexcept;
  Taylor2& operator/=(const Taylor2& o) noexcept;

  friend Taylor2 operator+(Taylor2 a, const Taylor2& b) noexcept { return a += b; }
  friend Taylor2 operator-(Taylor2 a, const Taylor2& b) noexcept { return a -= b; }
  friend Taylor2 operator*(Taylor2 a, const Taylor2& b) noexcept { return a *= b; }
  friend Taylor2 operator/(Taylor2 a, const Taylor2& b) noexcept { return a /= b; }
  friend Taylor2 operator-(const Taylor2& a) noexcept { return a.chain(-a.v_, -1.0, 0.0); }

  friend Taylor2 operator*(double s, Taylor2 a) noexcept { return a.scaled(s); }
  friend Taylor2 operator*(Taylor2 a, double s) noexcept { return a.scaled(s); }
  friend Taylor2 operator+(Taylor2 a, double s) noexcept {
    a.v_ += s;
    return a;
  }
  friend Taylor2 operator-(Taylor2 a, double s) noexcept {
    a.v_ -= s;
    return a;
  }

 private:
  static constexpr int index(int i, int j) noexcept {
    return i <= j ? i * kMaxDim + j : j * kMaxDim + i;
  }
  Taylor2 scaled(double s) const noexcept;

  int dim_ = 0;
  double v_ = 0.0;
  std::array<double, kMaxDim> g_{};
  std::array<double, kMaxDim * kMaxDim> h_{};  // upper triangle used
};

Taylor2 sin(const Taylor2& a) noexcept;
Taylor2 cos(const Taylor2& a) noexcept;
Taylor2 exp(const Taylor2& a) noexcept;
Taylor2 log(const Taylor2& a) noexcept;
Taylor2 sqrt(const Taylor2& a) noexcept;
Taylor2 tanh(const Taylor2& a) noexcept;
Taylor2 pow(const Taylor2& a, double c) noexcept;
// Constant exponents take the real power rule (negative bases allowed for
// integer exponents); otherwise exp(b·log a).
Taylor2 pow(const Taylor2& a, const Taylor2& b) noexcept;

}  // namespace graphmass
