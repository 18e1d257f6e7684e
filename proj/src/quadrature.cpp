#include "graphmass/quadrature.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "graphmass/errors.hpp"
#include "graphmass/parallel.hpp"
#include "graphmass/taylor.hpp"

namespace graphmass {

namespace {

// Golub–Welsch for the symmetric Jacobi weight (1 - t²)^a.
Rule1D golub_welsch(int count, double a) {
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(count);
  Eigen::VectorXd sub(std::max(count - 1, 0));
  for (int k = 1; k < count; ++k) {
    const double beta = k == 1 ? 1.0 / (3.0 + 2.0 * a)
                               : k * (k + 2.0 * a) / ((2.0 * k + 2.0 * a) * (2.0 * k + 2.0 * a) - 1.0);
    sub(k - 1) = std::sqrt(beta);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
  const double mu0 = std::sqrt(std::numbers::pi) * std::tgamma(a + 1.0) / std::tgamma(a + 1.5);

  Rule1D rule;
  rule.nodes.resize(count);
  rule.weights.resize(count);
  for (int i = 0; i < count; ++i) {
    rule.nodes[i] = solver.eigenvalues()(i);
    const double v0 = solver.eigenvectors()(0, i);
    rule.weights[i] = mu0 * v0 * v0;
  }
  return rule;
}

// Exact reflection symmetry t ↔ -t.
void symmetrize(Rule1D& rule) {
  const std::size_t k = rule.nodes.size();
  for (std::size_t i = 0; i < k / 2; ++i) {
    const std::size_t j = k - 1 - i;
    const double t = 0.5 * (rule.nodes[j] - rule.nodes[i]);
    const double w = 0.5 * (rule.weights[i] + rule.weights[j]);
    rule.nodes[i] = -t;
    rule.nodes[j] = t;
    rule.weights[i] = rule.weights[j] = w;
  }
  if (k % 2 == 1) rule.nodes[k / 2] = 0.0;
}

// Legendre P_k and P_k' at t.
std::pair<double, double> legendre(int k, double t) {
  double p0 = 1.0, p1 = t;
  if (k == 0) return {1.0, 0.0};
  for (int j = 2; j <= k; ++j) {
    const double p2 = ((2.0 * j - 1.0) * t * p1 - (j - 1.0) * p0) / j;
    p0 = p1;
    p1 = p2;
  }
  return {p1, k * (t * p1 - p0) / (t * t - 1.0)};
}

// Radial panel boundaries on [start, stop].
std::vector<double> radial_panels(double start, double stop) {
  std::vector<double> b{start};
  double cur = start > 0.0 ? start : std::min(1.0, stop);
  if (start <= 0.0 && cur < stop) b.push_back(cur);
  while (2.0 * cur < stop) {
    cur *= 2.0;
    b.push_back(cur);
  }
  if (b.back() < stop) b.push_back(stop);
  return b;
}

}  // namespace

Rule1D gauss_legendre(int count) {
  if (count < 1) throw std::invalid_argument("gauss_legendre: count must be positive");
  Rule1D rule = golub_welsch(count, 0.0);
  for (int i = 0; i < count; ++i) {
    double t = rule.nodes[i];
    for (int it = 0; it < 3; ++it) {
      const auto [p, dp] = legendre(count, t);
      t -= p / dp;
    }
    const double dp = legendre(count, t).second;
    rule.nodes[i] = t;
    rule.weights[i] = 2.0 / ((1.0 - t * t) * dp * dp);
  }
  symmetrize(rule);
  return rule;
}

Rule1D gauss_gegenbauer(int count, double a) {
  if (count < 1) throw std::invalid_argument("gauss_gegenbauer: count must be positive");
  if (!(a > -1.0)) throw std::invalid_argument("gauss_gegenbauer: exponent must exceed -1");
  if (a == 0.0) return gauss_legendre(count);
  Rule1D rule = golub_welsch(count, a);
  symmetrize(rule);
  return rule;
}

double unit_sphere_volume(int n) {
  return 2.0 * std::pow(std::numbers::pi, 0.5 * n) / std::tgamma(0.5 * n);
}

SphereRule sphere_rule(int n, int degree) {
  if (n < 2 || n > kMaxDim)
    throw std::invalid_argument("sphere_rule: unsupported dimension " + std::to_string(n));
  if (degree < 2) throw std::invalid_argument("sphere_rule: degree must be at least 2");

  SphereRule rule;
  rule.n = 2;
  rule.degree = degree;
  const int azimuth = degree + 1;
  for (int j = 0; j < azimuth; ++j) {
    const double phi = 2.0 * std::numbers::pi * j / azimuth;
    std::array<double, kMaxDim> p{};
    p[0] = std::cos(phi);
    p[1] = std::sin(phi);
    rule.nodes.push_back(p);
    rule.weights.push_back(2.0 * std::numbers::pi / azimuth);
  }

  const int polar = (degree + 2) / 2;
  for (int d = 3; d <= n; ++d) {
    const Rule1D t = gauss_gegenbauer(polar, 0.5 * (d - 3));
    SphereRule next;
    next.n = d;
    next.degree = degree;
    for (std::size_t a = 0; a < t.nodes.size(); ++a) {
      const double s = std::sqrt(1.0 - t.nodes[a] * t.nodes[a]);
      for (std::size_t k = 0; k < rule.size(); ++k) {
        std::array<double, kMaxDim> p{};
        for (int i = 0; i < d - 1; ++i) p[i] = s * rule.nodes[k][i];
        p[d - 1] = t.nodes[a];
        next.nodes.push_back(p);
        next.weights.push_back(t.weights[a] * rule.weights[k]);
      }
    }
    rule = std::move(next);
  }
  return rule;
}

double integrate_sphere(const ScalarField& g, double r, const SphereRule& rule) {
  const int n = rule.n;
  const std::vector<double> values = parallel_map(rule.size(), [&](std::size_t k) {
    std::array<double, kMaxDim> x{};
    for (int i = 0; i < n; ++i) x[i] = r * rule.nodes[k][i];
    return g(std::span<const double>(x.data(), n));
  });
  double sum = 0.0;
  for (std::size_t k = 0; k < rule.size(); ++k) sum += rule.weights[k] * values[k];
  return sum * std::pow(r, n - 1);
}

ExteriorIntegral integrate_exterior(const ScalarField& g, const DomainSpec& domain, const SphereRule& rule,
                                    const ExteriorOptions& options) {
  if (options.radial_nodes < 1) throw std::invalid_argument("integrate_exterior: radial_nodes must be positive");
  const int n = rule.n;
  const std::size_t dirs = rule.size();

  std::vector<double> rho(dirs, 0.0);
  double rho_max = 0.0;
  for (std::size_t k = 0; k < dirs; ++k) {
    rho[k] = domain.boundary_radius(rule.node(k));
    rho_max = std::max(rho_max, rho[k]);
  }
  const double split = options.split_factor * std::max(rho_max, 1.0);

  const Rule1D coarse = gauss_legendre(options.radial_nodes);
  const Rule1D fine = gauss_legendre(2 * options.radial_nodes);

  struct Radial {
    double coarse = 0.0;
    double fine = 0.0;
    double outer_tail = 0.0;
  };
  std::vector<Radial> radial(dirs);

  parallel_for(dirs, [&](std::size_t k) {
    const std::span<const double> theta = rule.node(k);
    std::array<double, kMaxDim> x{};
    const std::span<const double> xs(x.data(), n);
    auto at = [&](double r) {
      for (int i = 0; i < n; ++i) x[i] = r * theta[i];
      return g(xs);
    };
    const std::vector<double> bounds = radial_panels(rho[k], split);
    auto shells = [&](const Rule1D& q) {
      double s = 0.0;
      for (std::size_t p = 0; p + 1 < bounds.size(); ++p) {
        const double half = 0.5 * (bounds[p + 1] - bounds[p]);
        const double mid = 0.5 * (bounds[p + 1] + bounds[p]);
        for (std::size_t j = 0; j < q.nodes.size(); ++j) {
          const double r = mid + half * q.nodes[j];
          s += half * q.weights[j] * at(r) * std::pow(r, n - 1);
        }
      }
      return s;
    };
    // r = 1/t, dr = dt/t², over t ∈ [lo, hi].
    auto tail = [&](const Rule1D& q, double lo, double hi) {
      double s = 0.0;
      const double half = 0.5 * (hi - lo), mid = 0.5 * (hi + lo);
      for (std::size_t j = 0; j < q.nodes.size(); ++j) {
        const double t = mid + half * q.nodes[j];
        s += half * q.weights[j] * at(1.0 / t) * std::pow(t, -n - 1);
      }
      return s;
    };
    const double a = 1.0 / split;
    Radial& out = radial[k];
    out.coarse = shells(coarse) + tail(coarse, 0.0, 0.5 * a) + tail(coarse, 0.5 * a, a);
    out.outer_tail = tail(fine, 0.0, 0.5 * a);
    out.fine = shells(fine) + out.outer_tail + tail(fine, 0.5 * a, a);
  });

  ExteriorIntegral result;
  result.split_radius = split;
  double coarse_sum = 0.0;
  for (std::size_t k = 0; k < dirs; ++k) {
    result.value += rule.weights[k] * radial[k].fine;
    coarse_sum += rule.weights[k] * radial[k].coarse;
    result.tail_bound += rule.weights[k] * std::abs(radial[k].outer_tail);
  }
  result.refinement_delta = std::abs(result.value - coarse_sum);
  result.converged = result.refinement_delta <= options.tolerance * std::max(1.0, std::abs(result.value));
  return result;
}

HypersurfaceSample hypersurface_geometry(const DomainSpec& domain, std::span<const double> theta,
                                         double direction_weight) {
  if (!domain.has_boundary()) throw DomainError("hypersurface_geometry: domain has no boundary");
  const int n = static_cast<int>(theta.size());
  const double rho = domain.boundary_radius(theta);
  if (!std::isfinite(rho) || rho <= 0.0) throw DomainError("boundary radius must be positive and finite");

  HypersurfaceSample s;
  std::array<Taylor2, kMaxDim> x, u;
  Taylor2 r2 = Taylor2::constant(n, 0.0);
  for (int i = 0; i < n; ++i) {
    s.point[i] = rho * theta[i];
    x[i] = Taylor2::variable(n, i, s.point[i]);
    r2 += x[i] * x[i];
  }
  const Taylor2 r = sqrt(r2);
  for (int i = 0; i < n; ++i) u[i] = x[i] / r;
  // Σ is the zero set of Φ = |x| - ρ(x/|x|), with Φ > 0 outside Ω.
  const Taylor2 phi = r - domain.boundary_radius(std::span<const Taylor2>(u.data(), n));

  double gn = 0.0;
  for (int i = 0; i < n; ++i) gn += phi.grad(i) * phi.grad(i);
  gn = std::sqrt(gn);
  for (int i = 0; i < n; ++i) s.normal[i] = phi.grad(i) / gn;
  double lap = 0.0, nhn = 0.0;
  for (int i = 0; i < n; ++i) {
    lap += phi.hess(i, i);
    for (int j = 0; j < n; ++j) nhn += s.normal[i] * phi.hess(i, j) * s.normal[j];
  }
  s.mean_curvature = (lap - nhn) / gn;
  s.area_weight = direction_weight * std::pow(rho, n - 1) * gn;

  bool finite = std::isfinite(s.mean_curvature) && std::isfinite(s.area_weight);
  for (int i = 0; i < n; ++i) finite = finite && std::isfinite(s.normal[i]);
  if (!finite) throw DomainError("boundary is not twice differentiable at the sampled direction");
  return s;
}

std::vector<HypersurfaceSample> sample_boundary(const DomainSpec& domain, const SphereRule& rule) {
  std::vector<HypersurfaceSample> out;
  out.reserve(rule.size());
  for (std::size_t k = 0; k < rule.size(); ++k)
    out.push_back(hypersurface_geometry(domain, rule.node(k), rule.weights[k]));
  return out;
}

double ellipsoid_mean_curvature(std::span<const double> semi_axes, std::span<const double> point) {
  const std::size_t n = point.size();
  double lap = 0.0, grad2 = 0.0, ghg = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double a2 = semi_axes[i] * semi_axes[i];
    const double gi = 2.0 * point[i] / a2;
    lap += 2.0 / a2;
    grad2 += gi * gi;
    ghg += gi * gi * 2.0 / a2;
  }
  return (lap * grad2 - ghg) / std::pow(grad2, 1.5);
}

}  // namespace graphmass
