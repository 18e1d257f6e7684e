#include "graphmass/mass.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "graphmass/errors.hpp"
#include "graphmass/geometry.hpp"
#include "graphmass/parallel.hpp"

namespace graphmass {

namespace {

double grad_norm2(const Jet2& jet) {
  double s = 0.0;
  for (int a = 0; a < jet.m; ++a)
    for (int i = 0; i < jet.n; ++i) s += jet.d1(a, i) * jet.d1(a, i);
  return s;
}

double hess_norm2(const Jet2& jet) {
  double s = 0.0;
  for (int a = 0; a < jet.m; ++a)
    for (int i = 0; i < jet.n; ++i)
      for (int j = 0; j < jet.n; ++j) s += jet.d2(a, i, j) * jet.d2(a, i, j);
  return s;
}

void require_ascending(std::span<const double> radii, const char* what) {
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (!(radii[i] > 0.0) || !std::isfinite(radii[i]))
      throw PreconditionError(std::string(what) + ": radii must be positive");
    if (i > 0 && !(radii[i] > radii[i - 1]))
      throw PreconditionError(std::string(what) + ": radii must be strictly ascending");
  }
}

// Least-squares slope of log v against log r.
double loglog_slope(std::span<const double> r, std::span<const double> v) {
  const std::size_t k = r.size();
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    mx += std::log(r[i]);
    my += std::log(v[i]);
  }
  mx /= k;
  my /= k;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    const double dx = std::log(r[i]) - mx;
    sxy += dx * (std::log(v[i]) - my);
    sxx += dx * dx;
  }
  return sxy / sxx;
}

}  // namespace

double mass_normalization(int n) { return 1.0 / (2.0 * (n - 1) * unit_sphere_volume(n)); }

double surface_mass_at(const FunctionSpec& spec, double r, const SphereRule& rule) {
  const int n = spec.n;
  const double flux = integrate_sphere(
      [&](std::span<const double> x) {
        std::array<double, kMaxDim> nu{};
        for (int i = 0; i < n; ++i) nu[i] = x[i] / r;
        return adm_integrand(eval_jet(spec, x, JetValues::skip), std::span<const double>(nu.data(), n));
      },
      r, rule);
  return mass_normalization(n) * flux;
}

Extrapolation extrapolate_limit(std::span<const double> radii, std::span<const double> values) {
  Extrapolation e;
  if (values.empty()) return e;
  e.limit = values.back();
  const std::size_t k = values.size();
  if (k < 3) return e;

  const double r1 = radii[k - 3], r2 = radii[k - 2], r3 = radii[k - 1];
  const double v1 = values[k - 3], v2 = values[k - 2], v3 = values[k - 1];
  if (v2 == v1) return e;
  const double target = (v3 - v2) / (v2 - v1);
  auto ratio = [&](double s) {
    const double a1 = std::exp(-s * std::log(r1)), a2 = std::exp(-s * std::log(r2)),
                 a3 = std::exp(-s * std::log(r3));
    return (a3 - a2) / (a2 - a1);
  };
  double lo = 1e-6, hi = 30.0;
  double flo = ratio(lo) - target, fhi = ratio(hi) - target;
  if (!(flo * fhi < 0.0)) return e;
  for (int it = 0; it < 200 && hi - lo > 1e-14 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = ratio(mid) - target;
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  const double s = 0.5 * (lo + hi);
  const double c1 = (v3 - v2) / (std::pow(r3, -s) - std::pow(r2, -s));
  e.exponent = s;
  e.coefficient = c1;
  e.limit = v3 - c1 * std::pow(r3, -s);
  e.fitted = true;
  for (std::size_t i = 0; i < k; ++i)
    e.residual = std::max(e.residual, std::abs(e.limit + c1 * std::pow(radii[i], -s) - values[i]));
  return e;
}

SurfaceMass adm_mass_surface(const FunctionSpec& spec, std::span<const double> radii, const SphereRule& rule,
                             const DomainSpec& domain) {
  require_ascending(radii, "adm_mass_surface");
  SurfaceMass out;
  out.radii.assign(radii.begin(), radii.end());
  for (double r : radii) {
    for (std::size_t k = 0; k < rule.size(); ++k) {
      std::array<double, kMaxDim> x{};
      for (int i = 0; i < spec.n; ++i) x[i] = r * rule.nodes[k][i];
      if (!domain.contains(std::span<const double>(x.data(), spec.n)))
        throw PreconditionError("adm_mass_surface: sphere of radius " + std::to_string(r) + " meets Ω");
    }
    out.estimates.push_back(surface_mass_at(spec, r, rule));
  }
  out.fit = extrapolate_limit(out.radii, out.estimates);
  return out;
}

BulkMass adm_mass_bulk(const FunctionSpec& spec, const DomainSpec& domain, const SphereRule& rule,
                       const ExteriorOptions& options) {
  const ExteriorIntegral integral = integrate_exterior(
      [&](std::span<const double> x) {
        const Jet2 jet = eval_jet(spec, x, JetValues::skip);
        return scalar_curvature(jet) + normal_scalar(jet);
      },
      domain, rule, options);
  const double c = mass_normalization(spec.n);
  BulkMass out;
  out.mass = c * integral.value;
  out.tail_bound = c * integral.tail_bound;
  out.refinement_delta = c * integral.refinement_delta;
  out.converged = integral.converged;
  return out;
}

BoundaryTerm boundary_term_weighted(const FunctionSpec& spec, const DomainSpec& domain, const SphereRule& rule,
                                    double tolerance) {
  const int n = spec.n, m = spec.m();
  const std::vector<HypersurfaceSample> samples = sample_boundary(domain, rule);
  std::vector<Jet2> jets(samples.size());
  parallel_for(samples.size(), [&](std::size_t k) {
    jets[k] = eval_jet(spec, std::span<const double>(samples[k].point.data(), n));
  });

  BoundaryTerm out;
  for (int a = 0; a < m; ++a) {
    double lo = jets[0].value[a], hi = lo;
    for (const Jet2& j : jets) {
      lo = std::min(lo, j.value[a]);
      hi = std::max(hi, j.value[a]);
    }
    out.max_deviation = std::max(out.max_deviation, hi - lo);
  }
  if (out.max_deviation > tolerance)
    throw PreconditionError("f is not constant on the boundary (variation " + std::to_string(out.max_deviation) +
                            ")");

  double sum = 0.0;
  out.min_weight = 1.0;
  for (std::size_t k = 0; k < samples.size(); ++k) {
    const double d2 = grad_norm2(jets[k]);
    const double w = d2 / (1.0 + d2);
    out.min_weight = std::min(out.min_weight, w);
    out.max_weight = std::max(out.max_weight, w);
    sum += w * samples[k].mean_curvature * samples[k].area_weight;
  }
  out.value = mass_normalization(n) * sum;
  return out;
}

double boundary_term_full(const DomainSpec& domain, int n, const SphereRule& rule) {
  double sum = 0.0;
  for (const HypersurfaceSample& s : sample_boundary(domain, rule)) sum += s.mean_curvature * s.area_weight;
  return mass_normalization(n) * sum;
}

double boundary_area(const DomainSpec& domain, const SphereRule& rule) {
  double sum = 0.0;
  for (const HypersurfaceSample& s : sample_boundary(domain, rule)) sum += s.area_weight;
  return sum;
}

double penrose_bound(double area, int n) {
  return 0.5 * std::pow(area / unit_sphere_volume(n), (n - 2.0) / (n - 1.0));
}

PenroseCheck penrose_check(double mass, const DomainSpec& domain, int n, const SphereRule& rule) {
  PenroseCheck c;
  c.area = boundary_area(domain, rule);
  c.lhs = mass;
  c.rhs = penrose_bound(c.area, n);
  c.ratio = c.lhs / c.rhs;
  if (std::abs(c.ratio - 1.0) <= 1e-3)
    c.verdict = "equality case";
  else if (c.ratio > 1.0)
    c.verdict = "satisfied";
  else
    c.verdict = "hypotheses violated";
  return c;
}

AlexandrovFenchelCheck alexandrov_fenchel_check(const DomainSpec& domain, int n, const SphereRule& rule) {
  AlexandrovFenchelCheck c;
  c.lhs = boundary_term_full(domain, n, rule);
  c.rhs = penrose_bound(boundary_area(domain, rule), n);
  c.gap = c.lhs - c.rhs;
  if (std::abs(c.gap) <= 1e-8)
    c.verdict = "sphere (equality)";
  else if (c.gap > 0.0)
    c.verdict = "strict";
  else
    c.verdict = "violated";
  return c;
}

SuperadditivityCheck superadditivity_check(std::span<const double> a, double beta) {
  if (!(beta >= 0.0 && beta <= 1.0)) throw PreconditionError("superadditivity_check: beta must lie in [0, 1]");
  SuperadditivityCheck c;
  double total = 0.0;
  int nonzero = 0;
  for (double v : a) {
    if (!(v >= 0.0)) throw PreconditionError("superadditivity_check: entries must be nonnegative");
    c.lhs += std::pow(v, beta);
    total += v;
    if (v > 0.0) ++nonzero;
  }
  c.rhs = std::pow(total, beta);
  const double tol = 1e-12 * std::max(1.0, c.rhs);
  c.holds = c.lhs >= c.rhs - tol;
  c.equality = std::abs(c.lhs - c.rhs) <= tol;
  c.equality_expected = beta == 1.0 || nonzero <= 1;
  return c;
}

DecayEstimate decay_estimate(const FunctionSpec& spec, std::span<const double> radii,
                             const SphereRule& directions) {
  require_ascending(radii, "decay_estimate");
  if (radii.size() < 3) throw PreconditionError("decay_estimate: at least 3 radii are required");
  if (radii.back() < 100.0 * radii.front())
    throw PreconditionError("decay_estimate: radii must span at least two decades");

  const int n = spec.n;
  DecayEstimate d;
  d.radii.assign(radii.begin(), radii.end());
  bool grad_vanishes = false, curv_vanishes = false;
  for (double r : radii) {
    struct Sample {
      double grad = 0.0, curv = 0.0, scale = 0.0;
    };
    std::vector<Sample> samples(directions.size());
    parallel_for(directions.size(), [&](std::size_t k) {
      std::array<double, kMaxDim> x{};
      for (int i = 0; i < n; ++i) x[i] = r * directions.nodes[k][i];
      const Jet2 jet = eval_jet(spec, std::span<const double>(x.data(), n), JetValues::skip);
      samples[k] = {std::sqrt(grad_norm2(jet)), std::abs(scalar_curvature(jet) + normal_scalar(jet)),
                    hess_norm2(jet)};
    });
    double g = 0.0, c = 0.0, scale = 0.0;
    for (const Sample& s : samples) {
      g = std::max(g, s.grad);
      c = std::max(c, s.curv);
      scale = std::max(scale, s.scale);
    }
    d.max_gradient.push_back(g);
    d.max_curvature.push_back(c);
    // Below this the curvature is cancellation noise of O(|D²f|²) terms.
    if (g == 0.0) grad_vanishes = true;
    if (c <= 1e-10 * scale) curv_vanishes = true;
  }

  d.p_est = grad_vanishes ? kDecayCap : std::min(kDecayCap, -2.0 * loglog_slope(d.radii, d.max_gradient));
  d.q_est = curv_vanishes ? kDecayCap : std::min(kDecayCap, -loglog_slope(d.radii, d.max_curvature));
  d.flat_verdict = d.p_est > 0.5 * (n - 2) && d.q_est > n;
  return d;
}

std::vector<BoundaryApproach> boundary_approach(const FunctionSpec& spec, const DomainSpec& domain,
                                                const SphereRule& rule, std::span<const double> offsets) {
  const int n = spec.n, m = spec.m();
  const std::vector<HypersurfaceSample> samples = sample_boundary(domain, rule);
  std::vector<BoundaryApproach> out;
  for (double delta : offsets) {
    BoundaryApproach a;
    a.offset = delta;
    for (const HypersurfaceSample& s : samples) {
      std::array<double, kMaxDim> x{};
      for (int i = 0; i < n; ++i) x[i] = (1.0 + delta) * s.point[i];
      try {
        const Jet2 jet = eval_jet(spec, std::span<const double>(x.data(), n), JetValues::skip);
        const double d2 = grad_norm2(jet);
        a.max_abs_s_perp = std::max(a.max_abs_s_perp, std::abs(normal_scalar(jet)));
        a.max_verticality = std::max(a.max_verticality, 1.0 / (1.0 + d2));
        if (d2 > 0.0) {
          double tangential = 0.0;
          for (int al = 0; al < m; ++al) {
            double dn = 0.0;
            for (int i = 0; i < n; ++i) dn += jet.d1(al, i) * s.normal[i];
            for (int i = 0; i < n; ++i) {
              const double t = jet.d1(al, i) - dn * s.normal[i];
              tangential += t * t;
            }
          }
          a.max_tangential = std::max(a.max_tangential, std::sqrt(tangential / d2));
        }
      } catch (const DomainError&) {
        ++a.failed_points;
      }
    }
    out.push_back(a);
  }
  return out;
}

}  // namespace graphmass
