#include "graphmass/jets.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <numeric>

#include "graphmass/errors.hpp"

namespace graphmass {

namespace {

// Value, gradient and Hessian of one component.
struct ScalarJet {
  double value = 0.0;
  std::array<double, kMaxDim> grad{};
  Matrix hess;

  explicit ScalarJet(int n) : hess(n, n) {}

  ScalarJet& operator+=(const ScalarJet& o) {
    value += o.value;
    for (int i = 0; i < hess.rows(); ++i) {
      grad[i] += o.grad[i];
      for (int j = 0; j < hess.cols(); ++j) hess(i, j) += o.hess(i, j);
    }
    return *this;
  }
};

double norm(std::span<const double> x) {
  return std::sqrt(std::inner_product(x.begin(), x.end(), x.begin(), 0.0));
}

// φ(r) - φ(r₀) = ∫ φ'(s) ds with s = r₀ + t², which removes the square-root
// singularity of φ' at the horizon.
double schwarzschild_value(int n, double mass, double r) {
  const double r0 = schwarzschild_horizon(n, mass);
  if (n == 3) return std::sqrt(8.0 * mass * (r - r0));
  if (n == 4) return r0 * std::acosh(r / r0);
  auto integrand = [&](double t) {
    if (t == 0.0) return 2.0 * std::sqrt(r0 / (n - 2.0));
    const double s = r0 + t * t;
    const double u = std::pow(r0 / s, n - 2.0);
    const double one_minus_u = -std::expm1(-(n - 2.0) * std::log1p(t * t / r0));
    return 2.0 * t * std::sqrt(u / one_minus_u);
  };
  return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
      integrand, 0.0, std::sqrt(r - r0), 20, 1e-15);
}

// f(x) = φ(|x|) given φ', φ''.
void radial_derivatives(std::span<const double> x, double r, double d1, double d2,
                        ScalarJet& out) {
  const int n = static_cast<int>(x.size());
  for (int i = 0; i < n; ++i) {
    const double xi = x[i] / r;
    out.grad[i] = d1 * xi;
    for (int j = 0; j < n; ++j) {
      const double xj = x[j] / r;
      out.hess(i, j) = d2 * xi * xj + (d1 / r) * ((i == j ? 1.0 : 0.0) - xi * xj);
    }
  }
}

struct JetVisitor {
  std::span<const double> x;
  bool want_value;
  int n() const { return static_cast<int>(x.size()); }

  ScalarJet operator()(const kinds::Zero&) const { return ScalarJet(n()); }

  ScalarJet operator()(const kinds::Linear& k) const {
    ScalarJet j(n());
    j.value = k.offset;
    for (int i = 0; i < n(); ++i) {
      j.value += k.coefficients[i] * x[i];
      j.grad[i] = k.coefficients[i];
    }
    return j;
  }

  ScalarJet operator()(const kinds::SchwarzschildRadial& k) const {
    const double r = norm(x);
    const double r0 = schwarzschild_horizon(n(), k.mass);
    if (!(r >= r0 * (1.0 + 1e-9)))
      throw DomainError("point at radius " + std::to_string(r) +
                        " is inside the Schwarzschild horizon guard (r0 = " + std::to_string(r0) + ")");
    const double u = 2.0 * k.mass * std::pow(r, 2.0 - n());
    const double d1 = std::sqrt(u / (1.0 - u));
    const double d2 = (2.0 - n()) * std::sqrt(u) / (2.0 * r * std::pow(1.0 - u, 1.5));
    ScalarJet j(n());
    radial_derivatives(x, r, d1, d2, j);
    if (want_value) j.value = schwarzschild_value(n(), k.mass, r);
    return j;
  }

  ScalarJet operator()(const kinds::GaussianBump& k) const {
    const double w2 = k.width * k.width;
    std::array<double, kMaxDim> dx{};
    double q = 0.0;
    for (int i = 0; i < n(); ++i) {
      dx[i] = x[i] - (k.center.empty() ? 0.0 : k.center[i]);
      q += dx[i] * dx[i];
    }
    const double v = k.amplitude * std::exp(-q / w2);
    ScalarJet j(n());
    j.value = v;
    for (int i = 0; i < n(); ++i) {
      j.grad[i] = -2.0 * v * dx[i] / w2;
      for (int l = 0; l < n(); ++l)
        j.hess(i, l) = v * (4.0 * dx[i] * dx[l] / (w2 * w2) - (i == l ? 2.0 / w2 : 0.0));
    }
    return j;
  }

  ScalarJet operator()(const kinds::RadialProfile& k) const {
    const double rho = std::inner_product(x.begin(), x.end(), x.begin(), 0.0);
    const double base = rho + k.scale * k.scale;
    if (!(base > 0.0)) throw DomainError("radial profile is singular at the origin");
    const double h = 0.5 * k.exponent;
    const double p1 = k.amplitude * h * std::pow(base, h - 1.0);
    const double p2 = k.amplitude * h * (h - 1.0) * std::pow(base, h - 2.0);
    ScalarJet j(n());
    j.value = k.amplitude * std::pow(base, h);
    for (int i = 0; i < n(); ++i) {
      j.grad[i] = 2.0 * p1 * x[i];
      for (int l = 0; l < n(); ++l)
        j.hess(i, l) = 4.0 * p2 * x[i] * x[l] + (i == l ? 2.0 * p1 : 0.0);
    }
    return j;
  }

  ScalarJet operator()(const kinds::Formula& k) const {
    std::array<Taylor2, kMaxDim> vars;
    for (int i = 0; i < n(); ++i) vars[i] = Taylor2::variable(n(), i, x[i]);
    const Taylor2 t = k.expression.evaluate(std::span<const Taylor2>(vars.data(), n()));
    ScalarJet j(n());
    j.value = t.value();
    for (int i = 0; i < n(); ++i) {
      j.grad[i] = t.grad(i);
      for (int l = 0; l < n(); ++l) j.hess(i, l) = t.hess(i, l);
    }
    return j;
  }

  ScalarJet operator()(const std::shared_ptr<const kinds::Sum>& k) const {
    ScalarJet j(n());
    for (const ScalarSpec& term : k->terms) j += std::visit(*this, term.kind);
    return j;
  }
};

// Values only, evaluated without any derivative machinery.
struct ValueVisitor {
  std::span<const double> x;
  int n() const { return static_cast<int>(x.size()); }

  double operator()(const kinds::Zero&) const { return 0.0; }
  double operator()(const kinds::Linear& k) const {
    return std::inner_product(x.begin(), x.end(), k.coefficients.begin(), k.offset);
  }
  double operator()(const kinds::SchwarzschildRadial& k) const {
    const double r = norm(x);
    const double r0 = schwarzschild_horizon(n(), k.mass);
    if (!(r >= r0 * (1.0 + 1e-9))) throw DomainError("stencil point inside the Schwarzschild horizon guard");
    return schwarzschild_value(n(), k.mass, r);
  }
  double operator()(const kinds::GaussianBump& k) const {
    double q = 0.0;
    for (int i = 0; i < n(); ++i) {
      const double d = x[i] - (k.center.empty() ? 0.0 : k.center[i]);
      q += d * d;
    }
    return k.amplitude * std::exp(-q / (k.width * k.width));
  }
  double operator()(const kinds::RadialProfile& k) const {
    const double rho = std::inner_product(x.begin(), x.end(), x.begin(), 0.0);
    return k.amplitude * std::pow(rho + k.scale * k.scale, 0.5 * k.exponent);
  }
  double operator()(const kinds::Formula& k) const { return k.expression.evaluate(x); }
  double operator()(const std::shared_ptr<const kinds::Sum>& k) const {
    double s = 0.0;
    for (const ScalarSpec& term : k->terms) s += std::visit(*this, term.kind);
    return s;
  }
};

void require_finite(double v) {
  if (!std::isfinite(v)) throw DomainError("non-finite jet entry");
}

std::array<double, kMaxDim> values_at(const FunctionSpec& spec, std::span<const double> x) {
  std::array<double, kMaxDim> out{};
  for (int a = 0; a < spec.m(); ++a) {
    out[a] = std::visit(ValueVisitor{x}, spec.components[a].kind);
    require_finite(out[a]);
  }
  return out;
}

}  // namespace

std::string ScalarSpec::kind_name() const {
  struct Namer {
    std::string operator()(const kinds::Zero&) const { return "zero"; }
    std::string operator()(const kinds::Linear&) const { return "linear"; }
    std::string operator()(const kinds::SchwarzschildRadial&) const { return "schwarzschild_radial"; }
    std::string operator()(const kinds::GaussianBump&) const { return "gaussian_bump"; }
    std::string operator()(const kinds::RadialProfile&) const { return "radial_profile"; }
    std::string operator()(const kinds::Formula&) const { return "expression"; }
    std::string operator()(const std::shared_ptr<const kinds::Sum>&) const { return "sum"; }
  };
  return std::visit(Namer{}, kind);
}

ScalarSpec sum_of(std::vector<ScalarSpec> terms) {
  return {std::make_shared<const kinds::Sum>(kinds::Sum{std::move(terms)})};
}

FunctionSpec FunctionSpec::zero(int n, int m) {
  return {n, std::vector<ScalarSpec>(m, ScalarSpec{kinds::Zero{}})};
}

FunctionSpec FunctionSpec::linear(const Matrix& l) {
  FunctionSpec f{l.cols(), {}};
  for (int a = 0; a < l.rows(); ++a) {
    kinds::Linear k;
    for (int i = 0; i < l.cols(); ++i) k.coefficients.push_back(l(a, i));
    f.components.push_back({k});
  }
  return f;
}

FunctionSpec FunctionSpec::schwarzschild(int n, double mass) {
  return {n, {ScalarSpec{kinds::SchwarzschildRadial{mass}}}};
}

FunctionSpec FunctionSpec::single(int n, ScalarSpec component) {
  return {n, {std::move(component)}};
}

FunctionSpec parse_expression(std::string_view text, int n) {
  Expression e = Expression::parse(text, n);
  const int dim = e.dim();
  return {dim, {ScalarSpec{kinds::Formula{std::move(e)}}}};
}

FunctionSpec parse_expression(std::span<const std::string> texts, int n) {
  std::vector<Expression> parsed;
  int dim = n;
  for (const std::string& t : texts) {
    parsed.push_back(Expression::parse(t, n));
    dim = std::max(dim, parsed.back().dim());
  }
  FunctionSpec f{dim, {}};
  for (Expression& e : parsed) {
    // Re-parse components that inferred a smaller dimension.
    if (e.dim() != dim) e = Expression::parse(e.text(), dim);
    f.components.push_back({kinds::Formula{std::move(e)}});
  }
  return f;
}

double schwarzschild_horizon(int n, double mass) {
  return std::pow(2.0 * mass, 1.0 / (n - 2.0));
}

Jet2 eval_jet(const FunctionSpec& spec, std::span<const double> x, JetValues values) {
  const int n = spec.n;
  assert(static_cast<int>(x.size()) == n);
  Jet2 jet(n, spec.m());
  const JetVisitor visitor{x, values == JetValues::compute};
  for (int a = 0; a < spec.m(); ++a) {
    const ScalarJet s = std::visit(visitor, spec.components[a].kind);
    require_finite(s.value);
    jet.value[a] = s.value;
    for (int i = 0; i < n; ++i) {
      require_finite(s.grad[i]);
      jet.d1(a, i) = s.grad[i];
      for (int j = i; j < n; ++j) {
        require_finite(s.hess(i, j));
        jet.d2.set(a, i, j, s.hess(i, j));
      }
    }
  }
  return jet;
}

double default_fd_step(std::span<const double> x) { return std::max(1e-5, 1e-5 * norm(x)); }

Jet2 fd_jet(const FunctionSpec& spec, std::span<const double> x, double h) {
  const int n = spec.n;
  const int m = spec.m();
  if (h <= 0.0) h = default_fd_step(x);
  Jet2 jet(n, m);
  std::array<double, kMaxDim> p{};
  std::copy(x.begin(), x.end(), p.begin());
  const std::span<const double> pt(p.data(), n);
  auto at = [&](int i, double si, int j, double sj) {
    p[i] += si * h;
    p[j] += sj * h;
    const auto v = values_at(spec, pt);
    p[i] = x[i];
    p[j] = x[j];
    return v;
  };

  const auto f0 = values_at(spec, x);
  jet.value = f0;
  for (int i = 0; i < n; ++i) {
    p[i] = x[i] + h;
    const auto fp = values_at(spec, pt);
    p[i] = x[i] - h;
    const auto fm = values_at(spec, pt);
    p[i] = x[i];
    for (int a = 0; a < m; ++a) {
      jet.d1(a, i) = (fp[a] - fm[a]) / (2.0 * h);
      jet.d2.set(a, i, i, (fp[a] - 2.0 * f0[a] + fm[a]) / (h * h));
    }
    for (int j = i + 1; j < n; ++j) {
      const auto pp = at(i, 1, j, 1), pm = at(i, 1, j, -1);
      const auto mp = at(i, -1, j, 1), mm = at(i, -1, j, -1);
      for (int a = 0; a < m; ++a)
        jet.d2.set(a, i, j, (pp[a] - pm[a] - mp[a] + mm[a]) / (4.0 * h * h));
    }
  }
  return jet;
}

// ---------------------------------------------------------------------------

double DomainSpec::boundary_radius(std::span<const double> unit) const {
  if (!has_boundary()) return 0.0;
  struct Visitor {
    std::span<const double> u;
    double operator()(const shapes::Ball& b) const { return b.radius; }
    double operator()(const shapes::Ellipsoid& e) const {
      double s = 0.0;
      for (std::size_t i = 0; i < u.size(); ++i) s += u[i] * u[i] / (e.semi_axes[i] * e.semi_axes[i]);
      return 1.0 / std::sqrt(s);
    }
    double operator()(const shapes::RadialFormula& f) const { return f.expression.evaluate(u); }
  };
  return std::visit(Visitor{unit}, shape);
}

Taylor2 DomainSpec::boundary_radius(std::span<const Taylor2> unit) const {
  const int n = unit.empty() ? 0 : unit[0].dim();
  if (!has_boundary()) return Taylor2::constant(n, 0.0);
  struct Visitor {
    std::span<const Taylor2> u;
    int n;
    Taylor2 operator()(const shapes::Ball& b) const { return Taylor2::constant(n, b.radius); }
    Taylor2 operator()(const shapes::Ellipsoid& e) const {
      Taylor2 s = Taylor2::constant(n, 0.0);
      for (std::size_t i = 0; i < u.size(); ++i)
        s += u[i] * u[i] * (1.0 / (e.semi_axes[i] * e.semi_axes[i]));
      return pow(s, -0.5);
    }
    Taylor2 operator()(const shapes::RadialFormula& f) const { return f.expression.evaluate(u); }
  };
  return std::visit(Visitor{unit, n}, shape);
}

bool DomainSpec::contains(std::span<const double> x) const {
  if (!has_boundary()) return true;
  const double r = norm(x);
  if (r == 0.0) return false;
  std::array<double, kMaxDim> u{};
  for (std::size_t i = 0; i < x.size(); ++i) u[i] = x[i] / r;
  return r >= boundary_radius(std::span<const double>(u.data(), x.size()));
}

}  // namespace graphmass
