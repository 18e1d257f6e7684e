#pragma once

// ADM mass estimators for graphs over ℝⁿ \ Ω, decay diagnostics, and the
// Penrose / Alexandrov–Fenchel comparisons.

#include <span>
#include <string>
#include <vector>

#include "graphmass/jets.hpp"
#include "graphmass/quadrature.hpp"

namespace graphmass {

// 1 / (2(n-1)ω_{n-1}).
double mass_normalization(int n);

// Normalized ∫_{S_r} (f_i^α f_kk^α - f_k^α f_ik^α) x_i/r.
double surface_mass_at(const FunctionSpec& spec, double r, const SphereRule& rule);

// c0 + c1 r^{-s} through the last three samples.
struct Extrapolation {
  double limit = 0.0;
  double exponent = 0.0;
  double coefficient = 0.0;
  double residual = 0.0;  // max |model - value| over all samples
  bool fitted = false;    // false: no decaying model fits, limit = last value
};
Extrapolation extrapolate_limit(std::span<const double> radii, std::span<const double> values);

struct SurfaceMass {
  std::vector<double> radii;
  std::vector<double> estimates;
  Extrapolation fit;
};

// Radii must be ascending and their spheres must lie outside Ω
// (PreconditionError otherwise).
SurfaceMass adm_mass_surface(const FunctionSpec& spec, std::span<const double> radii, const SphereRule& rule,
                             const DomainSpec& domain = {});

struct BulkMass {
  double mass = 0.0;
  double tail_bound = 0.0;
  double refinement_delta = 0.0;
  bool converged = true;
};

// Normalized ∫_{ℝⁿ\Ω} (S + S⊥) dx.
BulkMass adm_mass_bulk(const FunctionSpec& spec, const DomainSpec& domain, const SphereRule& rule,
                       const ExteriorOptions& options = {});

struct BoundaryTerm {
  double value = 0.0;
  double max_deviation = 0.0;  // of f over Σ, per component
  double min_weight = 0.0;     // of |Df|² / (1 + |Df|²)
  double max_weight = 0.0;
};

// Normalized ∫_Σ |Df|²/(1+|Df|²) H dΣ. Throws PreconditionError when some
// component of f varies over Σ by more than tolerance.
BoundaryTerm boundary_term_weighted(const FunctionSpec& spec, const DomainSpec& domain, const SphereRule& rule,
                                    double tolerance = 1e-8);

// Normalized ∫_Σ H dΣ.
double boundary_term_full(const DomainSpec& domain, int n, const SphereRule& rule);

double boundary_area(const DomainSpec& domain, const SphereRule& rule);

// ½ (|Σ| / ω_{n-1})^{(n-2)/(n-1)}.
double penrose_bound(double area, int n);

struct PenroseCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;
  double area = 0.0;
  std::string verdict;  // "equality case", "satisfied" or "hypotheses violated"
};
PenroseCheck penrose_check(double mass, const DomainSpec& domain, int n, const SphereRule& rule);

struct AlexandrovFenchelCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  double gap = 0.0;
  std::string verdict;  // "sphere (equality)", "strict" or "violated"
};
AlexandrovFenchelCheck alexandrov_fenchel_check(const DomainSpec& domain, int n, const SphereRule& rule);

struct SuperadditivityCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;
  bool equality = false;           // |lhs - rhs| within rounding
  bool equality_expected = false;  // β = 1 or at most one nonzero entry
};
// Σ a_i^β against (Σ a_i)^β. Throws PreconditionError for β ∉ [0, 1] or a_i < 0.
SuperadditivityCheck superadditivity_check(std::span<const double> a, double beta);

struct DecayEstimate {
  double p_est = 0.0;
  double q_est = 0.0;
  bool flat_verdict = false;
  std::vector<double> radii;
  std::vector<double> max_gradient;   // max over directions of |Df|
  std::vector<double> max_curvature;  // max over directions of |S + S⊥|
};

inline constexpr double kDecayCap = 100.0;

// Log–log slopes over the sample radii. Needs ≥ 3 ascending radii spanning
// ≥ 2 decades (PreconditionError otherwise).
DecayEstimate decay_estimate(const FunctionSpec& spec, std::span<const double> radii,
                             const SphereRule& directions);

// Observed behaviour along x = (ρ(θ) + δ ρ(θ)) θ as δ → 0.
struct BoundaryApproach {
  double offset = 0.0;              // δ
  double max_abs_s_perp = 0.0;      // |S⊥|
  double max_verticality = 0.0;     // 1 / (1 + |Df|²)
  double max_tangential = 0.0;      // |Df (I - ννᵀ)| / |Df|, ν the normal of Σ
  int failed_points = 0;
};
std::vector<BoundaryApproach> boundary_approach(const FunctionSpec& spec, const DomainSpec& domain,
                                                const SphereRule& rule, std::span<const double> offsets);

}  // namespace graphmass
