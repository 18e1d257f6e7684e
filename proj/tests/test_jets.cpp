#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "graphmass/errors.hpp"
#include "graphmass/jets.hpp"
#include "support.hpp"

using namespace graphmass;

namespace {

double d1_distance(const Jet2& a, const Jet2& b) {
  double d = 0.0;
  for (int al = 0; al < a.m; ++al)
    for (int i = 0; i < a.n; ++i) d = std::max(d, std::abs(a.d1(al, i) - b.d1(al, i)));
  return d;
}

double d2_distance(const Jet2& a, const Jet2& b) {
  double d = 0.0;
  for (int al = 0; al < a.m; ++al)
    for (int i = 0; i < a.n; ++i)
      for (int k = 0; k < a.n; ++k) d = std::max(d, std::abs(a.d2(al, i, k) - b.d2(al, i, k)));
  return d;
}

double jet_distance(const Jet2& a, const Jet2& b) { return std::max(d1_distance(a, b), d2_distance(a, b)); }

struct CatalogEntry {
  std::string name;
  FunctionSpec spec;
  double r_min, r_max;
};

std::vector<CatalogEntry> catalog() {
  std::vector<CatalogEntry> out;
  out.push_back({"zero", FunctionSpec::zero(3, 1), 0.1, 3.0});
  Matrix l(2, 3);
  l(0, 0) = 1.0;
  l(0, 2) = -0.5;
  l(1, 1) = 2.0;
  out.push_back({"linear", FunctionSpec::linear(l), 0.1, 3.0});
  out.push_back({"schwarzschild", FunctionSpec::schwarzschild(3, 1.0), 2.5, 6.0});
  out.push_back({"schwarzschild_n4", FunctionSpec::schwarzschild(4, 0.5), 1.5, 4.0});
  out.push_back({"gaussian_bump", FunctionSpec::single(3, {kinds::GaussianBump{1.0, 1.2, {0.1, 0.0, -0.2}}}), 0.1, 2.5});
  out.push_back({"radial_profile", FunctionSpec::single(3, {kinds::RadialProfile{0.7, 1.0, 0.5}}), 0.1, 3.0});
  out.push_back({"expression", parse_expression("sin(x1)*exp(-x2^2) + x3^3/10", 3), 0.1, 2.0});
  out.push_back({"sum", FunctionSpec::single(3, sum_of({{kinds::GaussianBump{}}, {kinds::RadialProfile{}}})), 0.1, 2.0});
  return out;
}

}  // namespace

TEST(EvalJet, ZeroSpec) {
  const double x[] = {0.3, -2.0, 1.0};
  const Jet2 j = eval_jet(FunctionSpec::zero(3, 2), x);
  EXPECT_EQ(j.m, 2);
  for (int a = 0; a < 2; ++a) {
    EXPECT_EQ(j.value[a], 0.0);
    for (int i = 0; i < 3; ++i) {
      EXPECT_EQ(j.d1(a, i), 0.0);
      for (int k = 0; k < 3; ++k) EXPECT_EQ(j.d2(a, i, k), 0.0);
    }
  }
}

TEST(EvalJet, LinearSpec) {
  Matrix l(2, 2);
  l(0, 0) = 1.0;
  l(0, 1) = 2.0;
  l(1, 0) = -3.0;
  const double x[] = {0.5, 0.25};
  const Jet2 j = eval_jet(FunctionSpec::linear(l), x);
  EXPECT_DOUBLE_EQ(j.value[0], 1.0);
  EXPECT_DOUBLE_EQ(j.value[1], -1.5);
  EXPECT_EQ(max_abs(j.d1 - l), 0.0);
  for (int a = 0; a < 2; ++a)
    for (int i = 0; i < 2; ++i)
      for (int k = 0; k < 2; ++k) EXPECT_EQ(j.d2(a, i, k), 0.0);
}

TEST(EvalJet, SchwarzschildGradientAtRadiusFour) {
  const FunctionSpec s = FunctionSpec::schwarzschild(3, 1.0);
  const double x[] = {4.0 * 0.6, 0.0, 4.0 * 0.8};
  const Jet2 j = eval_jet(s, x);
  EXPECT_NEAR(j.d1(0, 0), 0.6, 1e-15);
  EXPECT_NEAR(j.d1(0, 2), 0.8, 1e-15);
  EXPECT_NEAR(j.value[0], std::sqrt(8.0 * (4.0 - 2.0)), 1e-14);
  EXPECT_LE(jet_distance(j, fd_jet(s, x, 1e-4)), 1e-7);
}

TEST(EvalJet, SchwarzschildProfileIdentity) {
  for (int n = 3; n <= 6; ++n)
    for (double mass : {0.5, 1.0, 2.0}) {
      const FunctionSpec s = FunctionSpec::schwarzschild(n, mass);
      const double r0 = schwarzschild_horizon(n, mass);
      for (double factor : {1.001, 1.1, 2.0, 10.0, 1000.0}) {
        const double r = factor * r0;
        std::vector<double> x(n, 0.0);
        x[0] = r;
        const Jet2 j = eval_jet(s, x, JetValues::skip);
        const double lhs = 1.0 + j.d1(0, 0) * j.d1(0, 0);
        const double rhs = 1.0 / (1.0 - 2.0 * mass * std::pow(r, 2.0 - n));
        EXPECT_NEAR(lhs, rhs, 1e-12 * rhs) << "n=" << n << " r=" << r;
      }
    }
}

TEST(EvalJet, SchwarzschildValues) {
  const double r0 = schwarzschild_horizon(4, 0.5);
  EXPECT_DOUBLE_EQ(r0, 1.0);
  const double x4[] = {3.0, 0.0, 0.0, 0.0};
  EXPECT_NEAR(eval_jet(FunctionSpec::schwarzschild(4, 0.5), x4).value[0], std::acosh(3.0), 1e-13);
  // Odd dimensions use quadrature; check the antiderivative against f'.
  const FunctionSpec s5 = FunctionSpec::schwarzschild(5, 1.0);
  const double h = 1e-4;
  const double xp[] = {3.0 + h, 0, 0, 0, 0}, xm[] = {3.0 - h, 0, 0, 0, 0}, xc[] = {3.0, 0, 0, 0, 0};
  const double slope = (eval_jet(s5, xp).value[0] - eval_jet(s5, xm).value[0]) / (2 * h);
  EXPECT_NEAR(slope, eval_jet(s5, xc).d1(0, 0), 1e-8);
  const double horizon[] = {schwarzschild_horizon(5, 1.0) * (1 + 1e-8), 0, 0, 0, 0};
  EXPECT_NEAR(eval_jet(s5, horizon).value[0], 0.0, 1e-3);
}

TEST(EvalJet, HorizonGuard) {
  const FunctionSpec s = FunctionSpec::schwarzschild(3, 1.0);
  const double inside[] = {1.0, 0.5, 0.0};
  EXPECT_THROW(eval_jet(s, inside), DomainError);
  const double edge[] = {2.0 * (1 + 1e-10), 0.0, 0.0};
  EXPECT_THROW(eval_jet(s, edge), DomainError);
  const double ok[] = {2.0 * (1 + 1e-8), 0.0, 0.0};
  EXPECT_NO_THROW(eval_jet(s, ok));
}

TEST(ParseExpression, Paraboloid) {
  const double x[] = {0.3, -0.7};
  const Jet2 j = eval_jet(parse_expression("x1^2 + x2^2", 2), x);
  EXPECT_DOUBLE_EQ(j.d2(0, 0, 0), 2.0);
  EXPECT_DOUBLE_EQ(j.d2(0, 1, 1), 2.0);
  EXPECT_DOUBLE_EQ(j.d2(0, 0, 1), 0.0);
}

TEST(ParseExpression, GaussianIsCriticalAtOrigin) {
  const double x[] = {0.0, 0.0, 0.0};
  const Jet2 j = eval_jet(parse_expression("exp(-(x1^2+x2^2+x3^2))"), x);
  for (int i = 0; i < 3; ++i) EXPECT_EQ(j.d1(0, i), 0.0);
  EXPECT_DOUBLE_EQ(j.d2(0, 0, 0), -2.0);
}

TEST(ParseExpression, InverseRadiusMatchesFiniteDifferences) {
  const FunctionSpec f = parse_expression("1/sqrt(x1^2+x2^2+x3^2)");
  const double x[] = {2.0, 0.0, 0.0};
  EXPECT_LE(jet_distance(eval_jet(f, x), fd_jet(f, x, 1e-4)), 1e-7);
  EXPECT_DOUBLE_EQ(eval_jet(f, x).d1(0, 0), -0.25);
}

TEST(ParseExpression, VectorMap) {
  const std::string texts[] = {"x1*x2", "x2^2"};
  const FunctionSpec f = parse_expression(std::span<const std::string>(texts, 2), 2);
  EXPECT_EQ(f.m(), 2);
  const double x[] = {1.5, 2.0};
  const Jet2 j = eval_jet(f, x);
  EXPECT_DOUBLE_EQ(j.value[1], 4.0);
  EXPECT_DOUBLE_EQ(j.d2(0, 0, 1), 1.0);
  EXPECT_THROW(parse_expression("x1 +* 2"), ParseError);
}

TEST(FdJet, ZeroAndLinear) {
  const double x[] = {0.4, 1.0, -0.3};
  const Jet2 z = fd_jet(FunctionSpec::zero(3, 1), x, 1e-3);
  EXPECT_EQ(jet_distance(z, Jet2(3, 1)), 0.0);
  Matrix l(1, 3);
  l(0, 0) = 0.7;
  l(0, 1) = -1.3;
  l(0, 2) = 2.1;
  const Jet2 j = fd_jet(FunctionSpec::linear(l), x, 1e-3);
  for (int i = 0; i < 3; ++i) {
    EXPECT_NEAR(j.d1(0, i), l(0, i), 1e-12);
    for (int k = 0; k < 3; ++k) EXPECT_LE(std::abs(j.d2(0, i, k)), 1e-9);
  }
}

TEST(FdJet, GaussianBumpAgrees) {
  std::mt19937_64 rng(17);
  const FunctionSpec g = FunctionSpec::single(3, {kinds::GaussianBump{1.0, 1.0, {}}});
  for (int t = 0; t < 50; ++t) {
    const std::vector<double> x = test_support::random_point(rng, 3, 0.0, 2.0);
    EXPECT_LE(jet_distance(eval_jet(g, x), fd_jet(g, x, 1e-4)), 1e-6);
  }
}

TEST(FdJet, DefaultStep) {
  const double small[] = {0.1, 0.0}, large[] = {300.0, 400.0};
  EXPECT_DOUBLE_EQ(default_fd_step(small), 1e-5);
  EXPECT_DOUBLE_EQ(default_fd_step(large), 5e-3);
}

// Second differences of values lose about eps/h^2 to rounding, so at
// h = 1e-4 they sit at the 1e-8 noise floor; their order is measured one
// decade up.
double observed_order(const CatalogEntry& c, double h, double (*dist)(const Jet2&, const Jet2&)) {
  std::mt19937_64 rng(23);
  double coarse = 0.0, fine = 0.0;
  for (int t = 0; t < 100; ++t) {
    const std::vector<double> x = test_support::random_point(rng, c.spec.n, c.r_min, c.r_max);
    const Jet2 exact = eval_jet(c.spec, x);
    coarse = std::max(coarse, dist(exact, fd_jet(c.spec, x, h)));
    fine = std::max(fine, dist(exact, fd_jet(c.spec, x, h / 10)));
  }
  if (coarse < 1e-9) return std::numeric_limits<double>::infinity();  // exact up to rounding
  return std::log10(coarse / fine);
}

TEST(FdJet, ConvergenceOrderOverCatalog) {
  for (const CatalogEntry& c : catalog()) {
    EXPECT_GE(observed_order(c, 1e-3, d1_distance), 1.8) << c.name;
    EXPECT_GE(observed_order(c, 1e-2, d2_distance), 1.8) << c.name;
  }
}

TEST(FdJet, ErrorBoundedAtFineStep) {
  std::mt19937_64 rng(29);
  for (const CatalogEntry& c : catalog())
    for (int t = 0; t < 100; ++t) {
      const std::vector<double> x = test_support::random_point(rng, c.spec.n, c.r_min, c.r_max);
      EXPECT_LE(jet_distance(eval_jet(c.spec, x), fd_jet(c.spec, x, 1e-4)), 1e-6) << c.name;
    }
}

TEST(EvalJet, SumIsComponentwise) {
  const ScalarSpec a{kinds::GaussianBump{0.5, 0.8, {}}}, b{kinds::RadialProfile{1.0, 2.0, 0.5}},
      c{kinds::Formula{Expression::parse("x1*x2 - x3", 3)}};
  const FunctionSpec s = FunctionSpec::single(3, sum_of({a, b, c}));
  const double x[] = {0.3, -0.6, 1.2};
  const Jet2 js = eval_jet(s, x);
  const Jet2 ja = eval_jet(FunctionSpec::single(3, a), x), jb = eval_jet(FunctionSpec::single(3, b), x),
             jc = eval_jet(FunctionSpec::single(3, c), x);
  EXPECT_EQ(js.value[0], ja.value[0] + jb.value[0] + jc.value[0]);
  for (int i = 0; i < 3; ++i) {
    EXPECT_EQ(js.d1(0, i), ja.d1(0, i) + jb.d1(0, i) + jc.d1(0, i));
    for (int k = 0; k < 3; ++k) EXPECT_EQ(js.d2(0, i, k), ja.d2(0, i, k) + jb.d2(0, i, k) + jc.d2(0, i, k));
  }
}

TEST(DomainSpec, BoundaryRadiusAndContains) {
  const DomainSpec ball = DomainSpec::exterior_of_ball(2.0);
  const double u[] = {0.0, 1.0, 0.0};
  EXPECT_EQ(ball.boundary_radius(u), 2.0);
  const double in[] = {1.0, 1.0, 0.0}, out[] = {2.0, 1.0, 0.0};
  EXPECT_FALSE(ball.contains(in));
  EXPECT_TRUE(ball.contains(out));
  const DomainSpec ell = DomainSpec::exterior_of_ellipsoid({1.0, 2.0, 3.0});
  const double e3[] = {0.0, 0.0, 1.0};
  EXPECT_DOUBLE_EQ(ell.boundary_radius(e3), 3.0);
  EXPECT_TRUE(DomainSpec::whole_space().contains(in));
  EXPECT_EQ(DomainSpec::whole_space().boundary_radius(u), 0.0);
}
