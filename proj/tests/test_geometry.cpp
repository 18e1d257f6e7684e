#include <gtest/gtest.h>

#include <cmath>

#include "graphmass/errors.hpp"
#include "graphmass/geometry.hpp"
#include "graphmass/identities.hpp"
#include "support.hpp"

using namespace graphmass;
using test_support::random_jet;

namespace {

Jet2 jet_at(const std::string& text, int n, std::span<const double> x) {
  return eval_jet(parse_expression(text, n), x);
}

// Second-derivative scale used to make curvature tolerances relative.
double curvature_scale(const Jet2& j) {
  double s = 0.0;
  for (int a = 0; a < j.m; ++a)
    for (int i = 0; i < j.n; ++i)
      for (int k = 0; k < j.n; ++k) s += j.d2(a, i, k) * j.d2(a, i, k);
  return s;
}

Jet2 rotate_target(const Jet2& j, const Matrix& r) {
  Jet2 out(j.n, j.m);
  for (int a = 0; a < j.m; ++a)
    for (int b = 0; b < j.m; ++b) {
      out.value[a] += r(a, b) * j.value[b];
      for (int i = 0; i < j.n; ++i) {
        out.d1(a, i) += r(a, b) * j.d1(b, i);
      }
    }
  for (int a = 0; a < j.m; ++a)
    for (int i = 0; i < j.n; ++i)
      for (int k = i; k < j.n; ++k) {
        double v = 0.0;
        for (int b = 0; b < j.m; ++b) v += r(a, b) * j.d2(b, i, k);
        out.d2.set(a, i, k, v);
      }
  return out;
}

}  // namespace

TEST(InducedMetric, Examples) {
  const Jet2 flat(3, 2);
  const Metric g0 = induced_metric(flat);
  EXPECT_EQ(g0.det, 1.0);
  EXPECT_EQ(max_abs(g0.m_tensor), 0.0);

  Jet2 j(2, 1);
  j.d1(0, 0) = 1.0;
  const Metric g = induced_metric(j);
  EXPECT_DOUBLE_EQ(g.g(0, 0), 2.0);
  EXPECT_DOUBLE_EQ(g.g(1, 1), 1.0);
  EXPECT_DOUBLE_EQ(g.det, 2.0);
  EXPECT_DOUBLE_EQ(g.g_inv(0, 0), 0.5);
  EXPECT_DOUBLE_EQ(g.m_tensor(0, 0), 0.5);
}

TEST(NormalGram, OrthogonalGradients) {
  Jet2 j(3, 2);
  j.d1(0, 0) = 1.0;
  j.d1(1, 1) = 2.0;
  const NormalGram u = normal_gram(j);
  EXPECT_DOUBLE_EQ(u.u(0, 0), 2.0);
  EXPECT_DOUBLE_EQ(u.u(1, 1), 5.0);
  EXPECT_DOUBLE_EQ(u.u(0, 1), 0.0);
  EXPECT_DOUBLE_EQ(u.det, 10.0);
}

TEST(NormalGram, InverseOnRandomJets) {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 200; ++t) {
    const Jet2 j = random_jet(rng, 1 + t % 8, 1 + (t / 8) % 8);
    const NormalGram u = normal_gram(j);
    EXPECT_LE(max_abs(u.u.matrix() * u.u_inv.matrix() - Matrix::identity(j.m)), 1e-12);
  }
}

TEST(InducedMetric, DeterminantMatchesNormalGram) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 1000; ++t) {
    const int n = 1 + static_cast<int>(rng() % kMaxDim), m = 1 + static_cast<int>(rng() % kMaxDim);
    const Jet2 j = random_jet(rng, n, m);
    const double dg = induced_metric(j).det, du = normal_gram(j).det;
    EXPECT_NEAR(dg, du, 1e-12 * dg) << n << "x" << m;
  }
}

TEST(Riemann, LinearJetIsFlat) {
  std::mt19937_64 rng(7);
  Jet2 j = random_jet(rng, 3, 2);
  j.d2 = Tensor3Sym(2, 3);
  const Riemann r = riemann_gauss(j);
  for (int i = 0; i < 3; ++i)
    for (int l = 0; l < 3; ++l)
      for (int k = 0; k < 3; ++k)
        for (int q = 0; q < 3; ++q) EXPECT_EQ(r(i, l, k, q), 0.0);
  EXPECT_EQ(scalar_curvature(j), 0.0);
}

TEST(Riemann, SymmetriesAndBianchi) {
  std::mt19937_64 rng(9);
  for (int t = 0; t < 50; ++t) {
    const int n = 2 + t % 4, m = 1 + t % 3;
    const Riemann r = riemann_gauss(random_jet(rng, n, m));
    for (int i = 0; i < n; ++i)
      for (int l = 0; l < n; ++l)
        for (int k = 0; k < n; ++k)
          for (int q = 0; q < n; ++q) {
            EXPECT_NEAR(r(i, l, k, q), -r(l, i, k, q), 1e-12);
            EXPECT_NEAR(r(i, l, k, q), -r(i, l, q, k), 1e-12);
            EXPECT_NEAR(r(i, l, k, q), r(k, q, i, l), 1e-12);
            EXPECT_NEAR(r(i, l, k, q) + r(k, i, l, q) + r(l, k, i, q), 0.0, 1e-12);
          }
  }
}

TEST(Riemann, SaddleGaussCurvature) {
  std::mt19937_64 rng(13);
  for (int t = 0; t < 20; ++t) {
    const double x[] = {test_support::uniform(rng, -2, 2), test_support::uniform(rng, -2, 2)};
    const Jet2 j = jet_at("x1*x2", 2, x);
    const double k = riemann_gauss(j)(0, 1, 1, 0) / induced_metric(j).det;
    const double expected = -1.0 / std::pow(1.0 + x[0] * x[0] + x[1] * x[1], 2);
    EXPECT_NEAR(k, expected, 1e-14);
    EXPECT_NEAR(scalar_curvature(j), 2.0 * expected, 1e-14);
  }
}

TEST(ScalarCurvature, HemisphereIsTwo) {
  const FunctionSpec cap = parse_expression("sqrt(1 - x1^2 - x2^2)", 2);
  const double x[] = {0.1, 0.2};
  EXPECT_NEAR(scalar_curvature(eval_jet(cap, x)), 2.0, 1e-12);
  EXPECT_NEAR(scalar_curvature_intrinsic(cap, x, 1e-4), 2.0, 1e-5);
}

TEST(ScalarCurvature, FlatGraphIntrinsic) {
  Matrix l(2, 3);
  l(0, 0) = 1.0;
  l(1, 2) = -0.4;
  const double x[] = {0.5, 1.0, -1.0};
  EXPECT_NEAR(scalar_curvature_intrinsic(FunctionSpec::linear(l), x, 1e-4), 0.0, 1e-10);
  EXPECT_NEAR(scalar_curvature_intrinsic(FunctionSpec::zero(3, 1), x, 1e-4), 0.0, 1e-10);
}

TEST(ScalarCurvature, SchwarzschildIsScalarFlat) {
  std::mt19937_64 rng(19);
  for (int n = 3; n <= 6; ++n) {
    const FunctionSpec s = FunctionSpec::schwarzschild(n, 1.0);
    const double r0 = schwarzschild_horizon(n, 1.0);
    for (int t = 0; t < 20; ++t) {
      const std::vector<double> x = test_support::random_point(rng, n, 1.05 * r0, 10.0 * r0);
      const Jet2 j = eval_jet(s, x, JetValues::skip);
      EXPECT_LE(std::abs(scalar_curvature(j)), 1e-8 * std::max(1.0, curvature_scale(j)));
    }
  }
}

TEST(ScalarCurvature, GaussMatchesIntrinsic) {
  std::mt19937_64 rng(21);
  std::vector<FunctionSpec> specs = test_support::codim2_catalog();
  specs.push_back(FunctionSpec::schwarzschild(3, 1.0));
  specs.push_back(FunctionSpec::single(4, {kinds::RadialProfile{0.8, 1.0, 1.0}}));
  specs.push_back(FunctionSpec::single(3, {kinds::GaussianBump{1.0, 1.0, {}}}));
  for (const FunctionSpec& f : specs)
    for (int t = 0; t < 20; ++t) {
      const double lo = std::holds_alternative<kinds::SchwarzschildRadial>(f.components[0].kind) ? 2.5 : 0.2;
      const std::vector<double> x = test_support::random_point(rng, f.n, lo, lo + 2.0);
      EXPECT_NEAR(scalar_curvature(eval_jet(f, x)), scalar_curvature_intrinsic(f, x, 1e-4), 1e-5);
    }
}

TEST(ShapeOperator, Examples) {
  const double origin[] = {0.0};
  const Jet2 parabola = jet_at("x1^2/2", 1, origin);
  const Matrix a = shape_operator(parabola, 0);
  EXPECT_DOUBLE_EQ(a(0, 0), 1.0);
  EXPECT_THROW(shape_operator(parabola, 1), std::out_of_range);
  EXPECT_THROW(shape_operator(parabola, -1), std::out_of_range);
  Jet2 linear(3, 2);
  linear.d1(1, 2) = 3.0;
  EXPECT_EQ(max_abs(shape_operator(linear, 1)), 0.0);
}

TEST(NormalScalar, VanishesInCodimensionOne) {
  std::mt19937_64 rng(25);
  for (int t = 0; t < 100; ++t) {
    const Jet2 j = random_jet(rng, 1 + t % 8, 1);
    EXPECT_EQ(normal_scalar(j), 0.0);
  }
}

TEST(NormalScalar, VanishesForParallelGradients) {
  std::mt19937_64 rng(27);
  for (int t = 0; t < 100; ++t) {
    const int n = 2 + t % 6;
    const Jet2 base = random_jet(rng, n, 1);
    Jet2 j(n, 2);
    for (int i = 0; i < n; ++i) {
      j.d1(0, i) = base.d1(0, i);
      j.d1(1, i) = 2.0 * base.d1(0, i);
      for (int k = i; k < n; ++k) {
        j.d2.set(0, i, k, base.d2(0, i, k));
        j.d2.set(1, i, k, 2.0 * base.d2(0, i, k));
      }
    }
    EXPECT_LE(std::abs(normal_scalar(j)), 1e-12);
  }
}

TEST(NormalScalar, MatchesRicciEquation) {
  std::mt19937_64 rng(31);
  double largest = 0.0;
  for (int t = 0; t < 500; ++t) {
    const Jet2 j = random_jet(rng, 2 + t % 5, 2 + t % 3);
    const double s = normal_scalar(j);
    EXPECT_NEAR(s, normal_scalar_ricci(j), 1e-10);
    largest = std::max(largest, std::abs(s));
  }
  EXPECT_GT(largest, 1e-2);
}

TEST(FluxField, Examples) {
  Jet2 linear(3, 2);
  linear.d1(0, 0) = 1.0;
  linear.d1(1, 2) = -2.0;
  for (double v : flux_field(linear)) EXPECT_EQ(v, 0.0);

  std::mt19937_64 rng(33);
  for (int t = 0; t < 50; ++t) {
    const int n = 1 + t % 6;
    const Jet2 j = random_jet(rng, n, 1);
    double grad2 = 0.0, lap = 0.0;
    for (int k = 0; k < n; ++k) {
      grad2 += j.d1(0, k) * j.d1(0, k);
      lap += j.d2(0, k, k);
    }
    const std::vector<double> x = flux_field(j);
    for (int i = 0; i < n; ++i) {
      double s = j.d1(0, i) * lap;
      for (int k = 0; k < n; ++k) s -= j.d1(0, k) * j.d2(0, i, k);
      EXPECT_NEAR(x[i], s / (1.0 + grad2), 1e-13);
    }
  }
}

TEST(AdmIntegrand, GraphFormMatchesMetricForm) {
  std::mt19937_64 rng(35);
  for (int t = 0; t < 200; ++t) {
    const int n = 2 + t % 7;
    const Jet2 j = random_jet(rng, n, 1 + t % 4);
    const std::vector<double> nu = test_support::random_point(rng, n, 1.0, 1.0);
    EXPECT_NEAR(adm_integrand(j, nu), adm_integrand_metric(j, nu), 1e-12);
  }
}

TEST(IsometryInvariance, TargetRotation) {
  std::mt19937_64 rng(37);
  for (int t = 0; t < 100; ++t) {
    const int n = 2 + t % 5, m = 2 + t % 3;
    const Jet2 j = random_jet(rng, n, m);
    const Jet2 r = rotate_target(j, test_support::random_orthogonal(rng, m));
    EXPECT_NEAR(scalar_curvature(j), scalar_curvature(r), 1e-12);
    EXPECT_NEAR(normal_scalar(j), normal_scalar(r), 1e-12);
    EXPECT_NEAR(induced_metric(j).det, induced_metric(r).det, 1e-12 * induced_metric(j).det);
    const std::vector<double> xj = flux_field(j), xr = flux_field(r);
    for (int i = 0; i < n; ++i) EXPECT_NEAR(xj[i], xr[i], 1e-12);
  }
}

TEST(DivergenceResidual, FlatAndSchwarzschild) {
  const double x[] = {0.3, 0.4, 0.5};
  Matrix l(2, 3);
  l(0, 1) = 1.5;
  EXPECT_LE(divergence_residual(FunctionSpec::linear(l), x, 1e-4), 1e-14);
  std::mt19937_64 rng(39);
  const FunctionSpec s = FunctionSpec::schwarzschild(3, 1.0);
  for (int t = 0; t < 30; ++t) {
    const std::vector<double> p = test_support::random_point(rng, 3, 2.2, 20.0);
    EXPECT_LE(divergence_residual(s, p, 1e-4), 1e-6);
  }
}

TEST(DivergenceResidual, CodimensionTwoConvergence) {
  for (const FunctionSpec& f : test_support::codim2_catalog()) {
    std::mt19937_64 rng(41);
    double coarse = 0.0, fine = 0.0, s_perp = 0.0;
    for (int t = 0; t < 100; ++t) {
      const std::vector<double> x = test_support::random_point(rng, 3, 0.1, 2.0);
      coarse = std::max(coarse, divergence_residual(f, x, 2e-4));
      fine = std::max(fine, divergence_residual(f, x, 1e-4));
      s_perp = std::max(s_perp, std::abs(normal_scalar(eval_jet(f, x))));
    }
    EXPECT_GT(s_perp, 1e-3);
    EXPECT_LE(fine, 1e-5);
    EXPECT_GE(std::log2(coarse / fine), 1.8) << coarse << " " << fine;
  }
}

TEST(Identities, FlatGraphHasZeroResiduals) {
  Matrix l(2, 3);
  l(0, 0) = 0.5;
  l(1, 1) = -1.0;
  const double x[] = {0.1, 0.2, 0.3};
  const IdentityResiduals r = check_identities(FunctionSpec::linear(l), x, 1e-4);
  EXPECT_LE(r.max_algebraic(), 1e-15);
  EXPECT_LE(r.max_differential(), 1e-12);
}

TEST(Identities, AlgebraicItemsOnRandomJets) {
  std::mt19937_64 rng(43);
  for (int t = 0; t < 300; ++t) {
    const int n = 1 + t % 6, m = 1 + t % 4;
    const Jet2 j = random_jet(rng, n, m);
    for (double v : gram_residuals(j)) EXPECT_LE(v, 1e-12);
    EXPECT_LE(mixed_symmetry_residual(j), 1e-12);
    EXPECT_LE(mm_contraction_residual(j), 1e-12);
    ThirdOrderData third(n, m);
    for (int a = 0; a < m; ++a) {
      for (int b = 0; b < m; ++b)
        for (int i = 0; i < n; ++i) third.du(a, b, i) = test_support::uniform(rng);
      for (int i = 0; i < n; ++i)
        for (int k = i; k < n; ++k)
          for (int l = 0; l < n; ++l) third.f3(a, i, k, l) = third.f3(a, k, i, l) = test_support::uniform(rng);
    }
    EXPECT_LE(std::abs(cf_contraction(j, third)), 1e-12);
  }
}

TEST(Identities, DifferentialItemsOnCodimensionTwo) {
  std::mt19937_64 rng(47);
  for (const FunctionSpec& f : test_support::codim2_catalog())
    for (int t = 0; t < 30; ++t) {
      const std::vector<double> x = test_support::random_point(rng, 3, 0.1, 2.0);
      const IdentityResiduals r = check_identities(f, x, 1e-4);
      EXPECT_LE(r.max_algebraic(), 1e-12);
      EXPECT_LE(r.max_differential(), 1e-5);
    }
}
