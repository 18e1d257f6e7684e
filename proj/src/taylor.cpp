#include "graphmass/taylor.hpp"

#include <limits>

namespace graphmass {

bool Taylor2::is_constant() const noexcept {
  for (int i = 0; i < dim_; ++i) {
    if (g_[i] != 0.0) return false;
    for (int j = i; j < dim_; ++j)
      if (h_[index(i, j)] != 0.0) return false;
  }
  return true;
}

Taylor2 Taylor2::chain(double f0, double f1, double f2) const noexcept {
  Taylor2 r;
  r.dim_ = dim_;
  r.v_ = f0;
  for (int i = 0; i < dim_; ++i) {
    r.g_[i] = f1 * g_[i];
    for (int j = i; j < dim_; ++j) {
      const int k = index(i, j);
      r.h_[k] = f1 * h_[k] + f2 * g_[i] * g_[j];
    }
  }
  return r;
}

Taylor2 Taylor2::scaled(double s) const noexcept {
  Taylor2 r = *this;
  r.v_ *= s;
  for (int i = 0; i < dim_; ++i) {
    r.g_[i] *= s;
    for (int j = i; j < dim_; ++j) r.h_[index(i, j)] *= s;
  }
  return r;
}

Taylor2& Taylor2::operator+=(const Taylor2& o) noexcept {
  if (dim_ < o.dim_) dim_ = o.dim_;
  v_ += o.v_;
  for (int i = 0; i < dim_; ++i) {
    g_[i] += o.g_[i];
    for (int j = i; j < dim_; ++j) h_[index(i, j)] += o.h_[index(i, j)];
  }
  return *this;
}

Taylor2& Taylor2::operator-=(const Taylor2& o) noexcept {
  if (dim_ < o.dim_) dim_ = o.dim_;
  v_ -= o.v_;
  for (int i = 0; i < dim_; ++i) {
    g_[i] -= o.g_[i];
    for (int j = i; j < dim_; ++j) h_[index(i, j)] -= o.h_[index(i, j)];
  }
  return *this;
}

Taylor2& Taylor2::operator*=(const Taylor2& o) noexcept {
  if (dim_ < o.dim_) dim_ = o.dim_;
  for (int i = 0; i < dim_; ++i)
    for (int j = i; j < dim_; ++j) {
      const int k = index(i, j);
      h_[k] = v_ * o.h_[k] + o.v_ * h_[k] + g_[i] * o.g_[j] + g_[j] * o.g_[i];
    }
  for (int i = 0; i < dim_; ++i) g_[i] = v_ * o.g_[i] + o.v_ * g_[i];
  v_ *= o.v_;
  return *this;
}

Taylor2& Taylor2::operator/=(const Taylor2& o) noexcept {
  const double v = o.v_;
  return *this *= o.chain(1.0 / v, -1.0 / (v * v), 2.0 / (v * v * v));
}

Taylor2 sin(const Taylor2& a) noexcept {
  const double s = std::sin(a.value()), c = std::cos(a.value());
  return a.chain(s, c, -s);
}

Taylor2 cos(const Taylor2& a) noexcept {
  const double s = std::sin(a.value()), c = std::cos(a.value());
  return a.chain(c, -s, -c);
}

Taylor2 exp(const Taylor2& a) noexcept {
  const double e = std::exp(a.value());
  return a.chain(e, e, e);
}

Taylor2 log(const Taylor2& a) noexcept {
  const double v = a.value();
  if (!(v > 0.0)) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    return a.chain(nan, nan, nan);
  }
  return a.chain(std::log(v), 1.0 / v, -1.0 / (v * v));
}

Taylor2 sqrt(const Taylor2& a) noexcept {
  const double s = std::sqrt(a.value());
  return a.chain(s, 0.5 / s, -0.25 / (s * a.value()));
}

Taylor2 tanh(const Taylor2& a) noexcept {
  const double t = std::tanh(a.value());
  const double d = 1.0 - t * t;
  return a.chain(t, d, -2.0 * t * d);
}

Taylor2 pow(const Taylor2& a, double c) noexcept {
  if (c == 0.0) return Taylor2::constant(a.dim(), 1.0);
  if (c == 1.0) return a;
  const double v = a.value();
  const double f2 = c == 2.0 ? 2.0 : c * (c - 1.0) * std::pow(v, c - 2.0);
  return a.chain(std::pow(v, c), c * std::pow(v, c - 1.0), f2);
}

Taylor2 pow(const Taylor2& a, const Taylor2& b) noexcept {
  if (b.is_constant()) return pow(a, b.value());
  return exp(b * log(a));
}

}  // namespace graphmass
