#include "graphmass/geometry.hpp"

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

#include "graphmass/errors.hpp"

namespace graphmass {

Metric induced_metric(const Jet2& jet) {
  const int n = jet.n;
  Metric out;
  out.g = SymMatrix(n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      double s = i == j ? 1.0 : 0.0;
      for (int a = 0; a < jet.m; ++a) s += jet.d1(a, i) * jet.d1(a, j);
      out.g.set(i, j, s);
    }
  const SpdInverse inv = invert_spd(out.g);
  out.g_inv = inv.inverse;
  out.det = inv.determinant;
  out.m_tensor = Matrix::identity(n) - out.g_inv.matrix();
  return out;
}

NormalGram normal_gram(const Jet2& jet) {
  const int m = jet.m;
  NormalGram out;
  out.u = SymMatrix(m);
  for (int a = 0; a < m; ++a)
    for (int b = a; b < m; ++b) {
      double s = a == b ? 1.0 : 0.0;
      for (int i = 0; i < jet.n; ++i) s += jet.d1(a, i) * jet.d1(b, i);
      out.u.set(a, b, s);
    }
  const SpdInverse inv = invert_spd(out.u);
  out.u_inv = inv.inverse;
  out.det = inv.determinant;
  return out;
}

Riemann riemann_gauss(const Jet2& jet) {
  const int n = jet.n, m = jet.m;
  const SymMatrix uinv = normal_gram(jet).u_inv;
  const Tensor3Sym& h = jet.d2;
  Riemann r(n);
  for (int i = 0; i < n; ++i)
    for (int l = 0; l < n; ++l)
      for (int k = 0; k < n; ++k)
        for (int j = 0; j < n; ++j) {
          double s = 0.0;
          for (int c = 0; c < m; ++c)
            for (int a = 0; a < m; ++a)
              s += (h(c, i, j) * h(a, k, l) - h(c, i, k) * h(a, j, l)) * uinv(c, a);
          r(i, l, k, j) = s;
        }
  return r;
}

double scalar_curvature(const Jet2& jet) {
  const int n = jet.n;
  const SymMatrix ginv = induced_metric(jet).g_inv;
  const Riemann r = riemann_gauss(jet);
  double s = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) s += ginv(i, j) * ginv(k, l) * r(i, l, k, j);
  return s;
}

double scalar_curvature_intrinsic(const FunctionSpec& spec, std::span<const double> x, double h) {
  const int n = spec.n;
  std::array<double, kMaxDim> p{};
  std::copy(x.begin(), x.end(), p.begin());
  const std::span<const double> pt(p.data(), n);
  auto metric_at = [&](int a, double sa, int b, double sb) {
    p[a] += sa * h;
    p[b] += sb * h;
    const Jet2 jet = eval_jet(spec, pt, JetValues::skip);
    p[a] = x[a];
    p[b] = x[b];
    return induced_metric(jet).g;
  };

  const SymMatrix g0 = metric_at(0, 0, 0, 0);
  const SymMatrix ginv = invert_spd(g0).inverse;

  // dg[k](i, j) = ∂_k g_ij, ddg[k][l](i, j) = ∂_k ∂_l g_ij
  std::array<Matrix, kMaxDim> dg;
  std::array<std::array<Matrix, kMaxDim>, kMaxDim> ddg;
  for (int k = 0; k < n; ++k) {
    const SymMatrix gp = metric_at(k, 1, k, 0), gm = metric_at(k, -1, k, 0);
    dg[k] = Matrix(n, n);
    ddg[k][k] = Matrix(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        dg[k](i, j) = (gp(i, j) - gm(i, j)) / (2.0 * h);
        ddg[k][k](i, j) = (gp(i, j) - 2.0 * g0(i, j) + gm(i, j)) / (h * h);
      }
    for (int l = k + 1; l < n; ++l) {
      const SymMatrix pp = metric_at(k, 1, l, 1), pm = metric_at(k, 1, l, -1);
      const SymMatrix mp = metric_at(k, -1, l, 1), mm = metric_at(k, -1, l, -1);
      ddg[k][l] = Matrix(n, n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          ddg[k][l](i, j) = (pp(i, j) - pm(i, j) - mp(i, j) + mm(i, j)) / (4.0 * h * h);
      ddg[l][k] = ddg[k][l];
    }
  }

  // Γ^d_ab = g^dc Γ_c,ab with Γ_c,ab = ½(∂_a g_bc + ∂_b g_ac - ∂_c g_ab)
  std::vector<double> gamma(static_cast<std::size_t>(n) * n * n, 0.0);
  auto G = [&](int d, int a, int b) -> double& { return gamma[(d * n + a) * n + b]; };
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int d = 0; d < n; ++d) {
        double s = 0.0;
        for (int c = 0; c < n; ++c)
          s += ginv(d, c) * 0.5 * (dg[a](b, c) + dg[b](a, c) - dg[c](a, b));
        G(d, a, b) = s;
      }

  // R_abcd = ½(∂_b∂_c g_ad + ∂_a∂_d g_bc - ∂_a∂_c g_bd - ∂_b∂_d g_ac)
  //          + g_ef (Γ^e_bc Γ^f_ad - Γ^e_bd Γ^f_ac)
  // S = g^ac g^bd R_abcd.
  double s = 0.0;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d) {
          const double w = ginv(a, c) * ginv(b, d);
          if (w == 0.0) continue;
          double r = 0.5 * (ddg[b][c](a, d) + ddg[a][d](b, c) - ddg[a][c](b, d) - ddg[b][d](a, c));
          for (int e = 0; e < n; ++e)
            for (int f = 0; f < n; ++f)
              r += g0(e, f) * (G(e, b, c) * G(f, a, d) - G(e, b, d) * G(f, a, c));
          s += w * r;
        }
  return s;
}

Matrix shape_operator(const Jet2& jet, int alpha) {
  if (alpha < 0 || alpha >= jet.m)
    throw std::out_of_range("normal index " + std::to_string(alpha) + " outside [0, " +
                            std::to_string(jet.m) + ")");
  const int n = jet.n;
  const SymMatrix ginv = induced_metric(jet).g_inv;
  Matrix a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double s = 0.0;
      for (int k = 0; k < n; ++k) s += jet.d2(alpha, i, k) * ginv(k, j);
      a(i, j) = s;
    }
  return a;
}

namespace {

// a[γ](k) = U^αγ f_k^α; the antisymmetric factor
// U^αγ U^βμ (f_i^β f_k^α - f_i^α f_k^β) collapses to a^μ_i a^γ_k - a^γ_i a^μ_k.
Matrix contracted_gradients(const Jet2& jet, const SymMatrix& uinv) {
  Matrix a(jet.m, jet.n);
  for (int c = 0; c < jet.m; ++c)
    for (int k = 0; k < jet.n; ++k) {
      double s = 0.0;
      for (int al = 0; al < jet.m; ++al) s += uinv(al, c) * jet.d1(al, k);
      a(c, k) = s;
    }
  return a;
}

// <Df_i^μ, Df^ν> = f_il^μ f_l^ν
double hess_grad(const Jet2& jet, int mu, int i, int nu) {
  double s = 0.0;
  for (int l = 0; l < jet.n; ++l) s += jet.d2(mu, i, l) * jet.d1(nu, l);
  return s;
}

// <Df_k^γ, Df_i^μ> = f_kl^γ f_il^μ
double hess_hess(const Jet2& jet, int g, int k, int mu, int i) {
  double s = 0.0;
  for (int l = 0; l < jet.n; ++l) s += jet.d2(g, k, l) * jet.d2(mu, i, l);
  return s;
}

}  // namespace

double normal_scalar(const Jet2& jet) {
  const int n = jet.n, m = jet.m;
  const SymMatrix uinv = normal_gram(jet).u_inv;
  const Matrix a = contracted_gradients(jet, uinv);

  // S⊥ = U^αγ U^βμ (<Df_k^γ, Df_i^μ> - U^θν <Df_i^μ, Df^ν><Df_k^γ, Df^θ>)
  //      (f_i^β f_k^α - f_i^α f_k^β)
  double s = 0.0;
  for (int g = 0; g < m; ++g)
    for (int mu = 0; mu < m; ++mu)
      for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
          const double factor = a(mu, i) * a(g, k) - a(g, i) * a(mu, k);
          if (factor == 0.0) continue;
          double inner = hess_hess(jet, g, k, mu, i);
          for (int th = 0; th < m; ++th)
            for (int nu = 0; nu < m; ++nu)
              inner -= uinv(th, nu) * hess_grad(jet, mu, i, nu) * hess_grad(jet, g, k, th);
          s += inner * factor;
        }
  return s;
}

double normal_scalar_ricci(const Jet2& jet) {
  const int n = jet.n, m = jet.m;
  const Metric metric = induced_metric(jet);
  const SymMatrix& g = metric.g;
  const SymMatrix& ginv = metric.g_inv;

  // grad[α](j) = g^jk f_k^α
  Matrix grad(m, n);
  for (int al = 0; al < m; ++al)
    for (int j = 0; j < n; ++j) {
      double s = 0.0;
      for (int k = 0; k < n; ++k) s += ginv(j, k) * jet.d1(al, k);
      grad(al, j) = s;
    }
  std::vector<Matrix> shape;
  for (int al = 0; al < m; ++al) shape.push_back(shape_operator(jet, al));

  // A^β applied to ∇f^α, as coordinate components.
  auto apply = [&](int beta, int alpha) {
    std::array<double, kMaxDim> w{};
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) w[j] += grad(alpha, i) * shape[beta](i, j);
    return w;
  };
  auto inner = [&](const std::array<double, kMaxDim>& u, const std::array<double, kMaxDim>& v) {
    double s = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) s += u[i] * g(i, j) * v[j];
    return s;
  };

  double s = 0.0;
  for (int mu = 0; mu < m; ++mu)
    for (int g2 = 0; g2 < m; ++g2)
      s += inner(apply(mu, mu), apply(g2, g2)) - inner(apply(mu, g2), apply(g2, mu));
  return s;
}

std::vector<double> flux_field(const Jet2& jet) {
  const int n = jet.n, m = jet.m;
  const SymMatrix uinv = normal_gram(jet).u_inv;
  const Matrix a = contracted_gradients(jet, uinv);
  std::array<double, kMaxDim> lap{};
  for (int al = 0; al < m; ++al)
    for (int k = 0; k < n; ++k) lap[al] += jet.d2(al, k, k);

  std::vector<double> x(n, 0.0);
  for (int i = 0; i < n; ++i) {
    // U^αβ (f_i^β f_kk^α - f_k^β f_ik^α)
    double s = 0.0;
    for (int al = 0; al < m; ++al)
      for (int be = 0; be < m; ++be) {
        double t = jet.d1(be, i) * lap[al];
        for (int k = 0; k < n; ++k) t -= jet.d1(be, k) * jet.d2(al, i, k);
        s += uinv(al, be) * t;
      }
    // U^αγ U^βμ <Df^γ, Df_k^μ> (f_i^α f_k^β - f_k^α f_i^β)
    for (int g = 0; g < m; ++g)
      for (int mu = 0; mu < m; ++mu)
        for (int k = 0; k < n; ++k) {
          const double factor = a(g, i) * a(mu, k) - a(g, k) * a(mu, i);
          if (factor != 0.0) s += hess_grad(jet, mu, k, g) * factor;
        }
    x[i] = s;
  }
  return x;
}

double adm_integrand(const Jet2& jet, std::span<const double> normal) {
  const int n = jet.n;
  double s = 0.0;
  for (int al = 0; al < jet.m; ++al) {
    double lap = 0.0;
    for (int k = 0; k < n; ++k) lap += jet.d2(al, k, k);
    for (int i = 0; i < n; ++i) {
      double t = jet.d1(al, i) * lap;
      for (int k = 0; k < n; ++k) t -= jet.d1(al, k) * jet.d2(al, i, k);
      s += t * normal[i];
    }
  }
  return s;
}

double adm_integrand_metric(const Jet2& jet, std::span<const double> normal) {
  const int n = jet.n;
  // ∂_k g_ij = f_ik^α f_j^α + f_i^α f_jk^α
  auto dg = [&](int i, int j, int k) {
    double s = 0.0;
    for (int al = 0; al < jet.m; ++al)
      s += jet.d2(al, i, k) * jet.d1(al, j) + jet.d1(al, i) * jet.d2(al, j, k);
    return s;
  };
  double s = 0.0;
  for (int j = 0; j < n; ++j) {
    double t = 0.0;
    for (int i = 0; i < n; ++i) t += dg(i, j, i) - dg(i, i, j);
    s += t * normal[j];
  }
  return s;
}

double flux_divergence(const FunctionSpec& spec, std::span<const double> x, double h) {
  const int n = spec.n;
  std::array<double, kMaxDim> p{};
  std::copy(x.begin(), x.end(), p.begin());
  const std::span<const double> pt(p.data(), n);
  double div = 0.0;
  for (int i = 0; i < n; ++i) {
    p[i] = x[i] + h;
    const double xp = flux_field(eval_jet(spec, pt, JetValues::skip))[i];
    p[i] = x[i] - h;
    const double xm = flux_field(eval_jet(spec, pt, JetValues::skip))[i];
    p[i] = x[i];
    div += (xp - xm) / (2.0 * h);
  }
  return div;
}

double divergence_residual(const FunctionSpec& spec, std::span<const double> x, double h) {
  const Jet2 jet = eval_jet(spec, x, JetValues::skip);
  return std::abs(scalar_curvature(jet) + normal_scalar(jet) - flux_divergence(spec, x, h));
}

CurvatureSample curvature_sample(const FunctionSpec& spec, std::span<const double> x, double h) {
  const Jet2 jet = eval_jet(spec, x, JetValues::skip);
  CurvatureSample out;
  out.s = scalar_curvature(jet);
  out.s_perp = normal_scalar(jet);
  out.flux = flux_field(jet);
  out.div_residual = std::abs(out.s + out.s_perp - flux_divergence(spec, x, h));
  return out;
}

}  // namespace graphmass
