#include "graphmass/identities.hpp"

#include <algorithm>
#include <cmath>

#include "graphmass/geometry.hpp"

namespace graphmass {

namespace {

double lap(const Jet2& jet, int a) {
  double s = 0.0;
  for (int k = 0; k < jet.n; ++k) s += jet.d2(a, k, k);
  return s;
}

// <Df^μ, Df_i^γ> = f_l^μ f_il^γ
double grad_hess(const Jet2& jet, int mu, int g, int i) {
  double s = 0.0;
  for (int l = 0; l < jet.n; ++l) s += jet.d1(mu, l) * jet.d2(g, i, l);
  return s;
}

// F_ik^βα = f_i^β f_k^α - f_k^β f_i^α
double antisym(const Jet2& jet, int b, int a, int i, int k) {
  return jet.d1(b, i) * jet.d1(a, k) - jet.d1(b, k) * jet.d1(a, i);
}

// W_i^αβ = f_i^β f_kk^α - f_k^β f_ik^α
double w_field(const Jet2& jet, int a, int b, int i) {
  double s = jet.d1(b, i) * lap(jet, a);
  for (int k = 0; k < jet.n; ++k) s -= jet.d1(b, k) * jet.d2(a, i, k);
  return s;
}

// T_i^αβ = U^αγ U^βμ <Df^γ, Df_i^μ>
double t_field(const Jet2& jet, const SymMatrix& uinv, int a, int b, int i) {
  double s = 0.0;
  for (int g = 0; g < jet.m; ++g)
    for (int mu = 0; mu < jet.m; ++mu) s += uinv(a, g) * uinv(b, mu) * grad_hess(jet, g, mu, i);
  return s;
}

// Σ_{αβ} U^αβ Σ w(i,j,k,l) (f_ij^β f_kl^α - f_ik^β f_jl^α)
template <class Weight>
double curvature_contraction(const Jet2& jet, const SymMatrix& uinv, Weight w) {
  const int n = jet.n, m = jet.m;
  double s = 0.0;
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      double t = 0.0;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          for (int k = 0; k < n; ++k)
            for (int l = 0; l < n; ++l) {
              const double wt = w(i, j, k, l);
              if (wt != 0.0)
                t += wt * (jet.d2(b, i, j) * jet.d2(a, k, l) - jet.d2(b, i, k) * jet.d2(a, j, l));
            }
      s += uinv(a, b) * t;
    }
  return s;
}

double delta(int i, int j) { return i == j ? 1.0 : 0.0; }

struct Stencil {
  Jet2 center;
  std::vector<Jet2> plus, minus;
  double h;

  Stencil(const FunctionSpec& spec, std::span<const double> x, double step) : h(step) {
    center = eval_jet(spec, x, JetValues::skip);
    std::array<double, kMaxDim> p{};
    std::copy(x.begin(), x.end(), p.begin());
    const std::span<const double> pt(p.data(), spec.n);
    for (int l = 0; l < spec.n; ++l) {
      p[l] = x[l] + h;
      plus.push_back(eval_jet(spec, pt, JetValues::skip));
      p[l] = x[l] - h;
      minus.push_back(eval_jet(spec, pt, JetValues::skip));
      p[l] = x[l];
    }
  }

  // ∂_l q(jet) by central differences.
  template <class Q>
  double d(int l, Q q) const {
    return (q(plus[l]) - q(minus[l])) / (2.0 * h);
  }
};

}  // namespace

double IdentityResiduals::max_algebraic() const {
  return std::max({gram[0], gram[1], gram[2], contraction[1], contraction[3], antisym_cf,
                   ricci_vs_formula});
}

double IdentityResiduals::max_differential() const {
  return std::max({contraction[0], contraction[2], normal_commutator, divergence, gauss_vs_intrinsic});
}

std::array<double, 3> gram_residuals(const Jet2& jet) {
  const int n = jet.n, m = jet.m;
  const Metric metric = induced_metric(jet);
  const SymMatrix uinv = normal_gram(jet).u_inv;
  const SymMatrix& ginv = metric.g_inv;
  std::array<double, 3> r{};

  for (int i = 0; i < n; ++i)
    for (int b = 0; b < m; ++b) {
      double lhs = 0.0, rhs = 0.0;
      for (int a = 0; a < m; ++a) lhs += jet.d1(a, i) * uinv(a, b);
      for (int j = 0; j < n; ++j) rhs += jet.d1(b, j) * ginv(j, i);
      r[0] = std::max(r[0], std::abs(lhs - rhs));
    }

  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double via_g = 0.0, via_u = 0.0;
      for (int a = 0; a < m; ++a)
        for (int k = 0; k < n; ++k) via_g += jet.d1(a, i) * jet.d1(a, k) * ginv(k, j);
      for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) via_u += jet.d1(a, i) * jet.d1(b, j) * uinv(a, b);
      const double mij = metric.m_tensor(i, j);
      r[1] = std::max({r[1], std::abs(mij - via_g), std::abs(mij - via_u)});
    }

  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      double lhs = 0.0;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) lhs += ginv(i, j) * jet.d1(a, i) * jet.d1(b, j);
      r[2] = std::max(r[2], std::abs(lhs - (delta(a, b) - uinv(a, b))));
    }
  return r;
}

double mixed_symmetry_residual(const Jet2& jet) {
  const SymMatrix uinv = normal_gram(jet).u_inv;
  const Matrix mt = induced_metric(jet).m_tensor;
  const double lhs =
      curvature_contraction(jet, uinv, [&](int i, int j, int k, int l) { return delta(i, j) * mt(k, l); });
  const double rhs =
      curvature_contraction(jet, uinv, [&](int i, int j, int k, int l) { return delta(k, l) * mt(i, j); });
  return std::abs(lhs - rhs);
}

double mm_contraction_residual(const Jet2& jet) {
  const int n = jet.n, m = jet.m;
  const SymMatrix uinv = normal_gram(jet).u_inv;
  const Matrix mt = induced_metric(jet).m_tensor;
  const double lhs =
      curvature_contraction(jet, uinv, [&](int i, int j, int k, int l) { return mt(j, i) * mt(k, l); });

  // U^αν U^βμ U^θγ <Df^μ, Df_i^γ> <Df^ν, Df_k^θ> F_ik^βα
  double rhs = 0.0;
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
          const double f = antisym(jet, b, a, i, k);
          if (f == 0.0) continue;
          double v = 0.0;
          for (int nu = 0; nu < m; ++nu)
            for (int mu = 0; mu < m; ++mu)
              for (int th = 0; th < m; ++th)
                for (int g = 0; g < m; ++g)
                  v += uinv(a, nu) * uinv(b, mu) * uinv(th, g) * grad_hess(jet, mu, g, i) *
                       grad_hess(jet, nu, th, k);
          rhs += v * f;
        }
  return std::abs(lhs - rhs);
}

double cf_contraction(const Jet2& jet, const ThirdOrderData& third) {
  const int n = jet.n, m = jet.m;
  const SymMatrix uinv = normal_gram(jet).u_inv;
  double s = 0.0;
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
          double c = 0.0;
          for (int nu = 0; nu < m; ++nu)
            for (int th = 0; th < m; ++th) c += uinv(a, nu) * third.du(b, th, i) * grad_hess(jet, nu, th, k);
          for (int g = 0; g < m; ++g)
            for (int mu = 0; mu < m; ++mu) c += uinv(a, g) * third.du(b, mu, k) * grad_hess(jet, g, mu, i);
          for (int g = 0; g < m; ++g)
            for (int mu = 0; mu < m; ++mu) {
              double third_ip = 0.0;  // <Df^γ, Df_ik^μ>
              for (int l = 0; l < n; ++l) third_ip += jet.d1(g, l) * third.f3(mu, i, k, l);
              c += uinv(a, g) * uinv(b, mu) * third_ip;
            }
          s += c * antisym(jet, b, a, i, k);
        }
  return std::abs(s);
}

ThirdOrderData fd_third_order(const FunctionSpec& spec, std::span<const double> x, double h) {
  const Stencil st(spec, x, h);
  const int n = spec.n, m = spec.m();
  ThirdOrderData out(n, m);
  for (int l = 0; l < n; ++l) {
    const SymMatrix up = normal_gram(st.plus[l]).u_inv, um = normal_gram(st.minus[l]).u_inv;
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b) out.du(a, b, l) = (up(a, b) - um(a, b)) / (2.0 * h);
    for (int mu = 0; mu < m; ++mu)
      for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k)
          out.f3(mu, i, k, l) = (st.plus[l].d2(mu, i, k) - st.minus[l].d2(mu, i, k)) / (2.0 * h);
  }
  return out;
}

IdentityResiduals check_identities(const FunctionSpec& spec, std::span<const double> x, double h) {
  const Stencil st(spec, x, h);
  const Jet2& jet = st.center;
  const int n = jet.n, m = jet.m;
  const SymMatrix uinv = normal_gram(jet).u_inv;
  const Matrix mt = induced_metric(jet).m_tensor;
  IdentityResiduals r;

  r.gram = gram_residuals(jet);

  // δ_ij δ_kl U^αβ(...) = U^αβ (W_i^αβ)_i
  {
    const double lhs = curvature_contraction(
        jet, uinv, [](int i, int j, int k, int l) { return delta(i, j) * delta(k, l); });
    double rhs = 0.0;
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b) {
        double div = 0.0;
        for (int i = 0; i < n; ++i) div += st.d(i, [&](const Jet2& j) { return w_field(j, a, b, i); });
        rhs += uinv(a, b) * div;
      }
    r.contraction[0] = std::abs(lhs - rhs);
  }

  r.contraction[1] = mixed_symmetry_residual(jet);

  // 2 δ_ij M_kl U^αβ(...) = -U^αβ_i W_i^αβ - U^αγ U^βμ <Df^γ, Df_i^μ> F_ik,k^βα
  {
    const double lhs = 2.0 * curvature_contraction(
                                 jet, uinv, [&](int i, int j, int k, int l) { return delta(i, j) * mt(k, l); });
    double rhs = 0.0;
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b)
        for (int i = 0; i < n; ++i) {
          const double du = st.d(i, [&](const Jet2& j) { return normal_gram(j).u_inv(a, b); });
          rhs -= du * w_field(jet, a, b, i);
          double dfk = 0.0;
          for (int k = 0; k < n; ++k) dfk += st.d(k, [&](const Jet2& j) { return antisym(j, b, a, i, k); });
          double tt = 0.0;
          for (int g = 0; g < m; ++g)
            for (int mu = 0; mu < m; ++mu) tt += uinv(a, g) * uinv(b, mu) * grad_hess(jet, g, mu, i);
          rhs -= tt * dfk;
        }
    r.contraction[2] = std::abs(lhs - rhs);
  }

  r.contraction[3] = mm_contraction_residual(jet);
  r.antisym_cf = cf_contraction(jet, fd_third_order(spec, x, h));

  // V_ik^αβ F_ik^βα = -S⊥
  const double s_perp_ricci = normal_scalar_ricci(jet);
  {
    double vf = 0.0;
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b)
        for (int i = 0; i < n; ++i)
          for (int k = 0; k < n; ++k) {
            const double f = antisym(jet, b, a, i, k);
            if (f == 0.0) continue;
            double v = 0.0;
            for (int nu = 0; nu < m; ++nu)
              for (int mu = 0; mu < m; ++mu)
                for (int th = 0; th < m; ++th)
                  for (int g = 0; g < m; ++g)
                    v += uinv(a, nu) * uinv(b, mu) * uinv(th, g) * grad_hess(jet, mu, g, i) *
                         grad_hess(jet, nu, th, k);
            v -= st.d(k, [&](const Jet2& j) { return t_field(j, normal_gram(j).u_inv, a, b, i); });
            vf += v * f;
          }
    r.normal_commutator = std::abs(vf + s_perp_ricci);
  }

  const double s = scalar_curvature(jet);
  const double s_perp = normal_scalar(jet);
  r.ricci_vs_formula = std::abs(s_perp - s_perp_ricci);
  r.gauss_vs_intrinsic = std::abs(s - scalar_curvature_intrinsic(spec, x, h));

  double div = 0.0;
  for (int i = 0; i < n; ++i) div += st.d(i, [&](const Jet2& j) { return flux_field(j)[i]; });
  r.divergence = std::abs(s + s_perp - div);
  return r;
}

}  // namespace graphmass
