#pragma once

// Shared fixtures for the test suites: random jets and SPD matrices, and a
// few maps with a genuinely curved normal bundle.

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "graphmass/jets.hpp"
#include "graphmass/tensor.hpp"

namespace graphmass::test_support {

inline double uniform(std::mt19937_64& rng, double lo = -1.0, double hi = 1.0) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline Jet2 random_jet(std::mt19937_64& rng, int n, int m, double scale = 1.0) {
  Jet2 j(n, m);
  for (int a = 0; a < m; ++a) {
    j.value[a] = uniform(rng);
    for (int i = 0; i < n; ++i) j.d1(a, i) = scale * uniform(rng);
    for (int i = 0; i < n; ++i)
      for (int k = i; k < n; ++k) j.d2.set(a, i, k, scale * uniform(rng));
  }
  return j;
}

inline Matrix random_matrix(std::mt19937_64& rng, int rows, int cols) {
  Matrix a(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) a(i, j) = uniform(rng);
  return a;
}

// Haar-ish orthogonal matrix by Gram-Schmidt on a random matrix.
inline Matrix random_orthogonal(std::mt19937_64& rng, int n) {
  Matrix q = random_matrix(rng, n, n);
  for (int j = 0; j < n; ++j) {
    for (int p = 0; p < j; ++p) {
      double d = 0.0;
      for (int i = 0; i < n; ++i) d += q(i, j) * q(i, p);
      for (int i = 0; i < n; ++i) q(i, j) -= d * q(i, p);
    }
    double norm = 0.0;
    for (int i = 0; i < n; ++i) norm += q(i, j) * q(i, j);
    norm = std::sqrt(norm);
    for (int i = 0; i < n; ++i) q(i, j) /= norm;
  }
  return q;
}

// Q diag(λ) Qᵀ with λ log-uniform in [1, cond].
inline SymMatrix random_spd(std::mt19937_64& rng, int n, double cond) {
  const Matrix q = random_orthogonal(rng, n);
  std::vector<double> lambda(n);
  for (int i = 0; i < n; ++i) lambda[i] = std::pow(cond, n == 1 ? 0.0 : static_cast<double>(i) / (n - 1));
  SymMatrix a(n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      double s = 0.0;
      for (int k = 0; k < n; ++k) s += q(i, k) * lambda[k] * q(j, k);
      a.set(i, j, s);
    }
  return a;
}

inline std::vector<double> random_point(std::mt19937_64& rng, int n, double r_min, double r_max) {
  std::normal_distribution<double> normal;
  std::vector<double> x(n);
  double s = 0.0;
  for (double& v : x) {
    v = normal(rng);
    s += v * v;
  }
  const double r = uniform(rng, r_min, r_max);
  for (double& v : x) v *= r / std::sqrt(s);
  return x;
}

// Codimension-two maps ℝ³ → ℝ² with nonvanishing S⊥.
inline std::vector<FunctionSpec> codim2_catalog() {
  std::vector<FunctionSpec> out;
  {
    FunctionSpec f;
    f.n = 3;
    f.components.push_back({kinds::GaussianBump{1.0, 1.0, {0.0, 0.0, 0.0}}});
    f.components.push_back({kinds::Formula{Expression::parse("x1*exp(-(x1^2+x2^2+x3^2))", 3)}});
    out.push_back(f);
  }
  {
    FunctionSpec f;
    f.n = 3;
    f.components.push_back({kinds::RadialProfile{0.6, 1.0, 0.5}});
    f.components.push_back({kinds::GaussianBump{0.7, 1.3, {0.3, -0.2, 0.1}}});
    out.push_back(f);
  }
  {
    const std::string texts[] = {"sin(x1)*exp(-x2^2) + 0.2*x3^2", "x2*x3/(1 + x1^2 + x2^2 + x3^2)"};
    out.push_back(parse_expression(std::span<const std::string>(texts, 2), 3));
  }
  return out;
}

}  // namespace graphmass::test_support
