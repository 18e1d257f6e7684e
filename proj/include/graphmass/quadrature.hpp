#pragma once

// Deterministic rules for coordinate spheres, exterior domains and
// star-shaped hypersurfaces Σ = {ρ(θ)θ}.

#include <array>
#include <functional>
#include <span>
#include <vector>

#include "graphmass/jets.hpp"
#include "graphmass/tensor.hpp"

namespace graphmass {

using ScalarField = std::function<double(std::span<const double>)>;

struct Rule1D {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// Gauss–Legendre on [-1, 1].
Rule1D gauss_legendre(int count);
// Gauss rule for the weight (1 - t²)^a on [-1, 1], a > -1 (Golub–Welsch).
Rule1D gauss_gegenbauer(int count, double a);

// ω_{n-1} = 2π^{n/2} / Γ(n/2).
double unit_sphere_volume(int n);

struct SphereRule {
  int n = 0;
  int degree = 0;
  std::vector<std::array<double, kMaxDim>> nodes;
  std::vector<double> weights;

  std::size_t size() const noexcept { return weights.size(); }
  std::span<const double> node(std::size_t k) const { return {nodes[k].data(), static_cast<std::size_t>(n)}; }
};

// Product rule exact for polynomials of total degree ≤ degree restricted to
// S^{n-1}: equal weights in the azimuth, Gauss in each polar cosine with the
// weight (1 - t²)^{(d-3)/2} of the d-sphere recursion. Throws
// std::invalid_argument outside 2 ≤ n ≤ kMaxDim or for degree < 2.
SphereRule sphere_rule(int n, int degree);

// Σ_k w_k r^{n-1} g(r θ_k).
double integrate_sphere(const ScalarField& g, double r, const SphereRule& rule);

struct ExteriorOptions {
  int radial_nodes = 16;       // Gauss points per radial panel
  double split_factor = 10.0;  // R_split = split_factor · max(max ρ, 1)
  double tolerance = 1e-8;     // relative, between N and 2N radial nodes
};

struct ExteriorIntegral {
  double value = 0.0;
  double tail_bound = 0.0;
  double refinement_delta = 0.0;
  double split_radius = 0.0;
  bool converged = true;
};

// ∫ g dx over ℝⁿ \ Ω in polar coordinates: panels on [ρ(θ), R_split] and
// the tail r > R_split through t = 1/r. Runs with N and 2N radial nodes and
// returns the finer value.
ExteriorIntegral integrate_exterior(const ScalarField& g, const DomainSpec& domain, const SphereRule& rule,
                                    const ExteriorOptions& options = {});

struct HypersurfaceSample {
  std::array<double, kMaxDim> point{};
  std::array<double, kMaxDim> normal{};  // unit, out of Ω
  double area_weight = 0.0;              // dΣ for the direction weight given
  double mean_curvature = 0.0;           // div ν, (n-1)/R on spheres
};

// Geometry of Σ at ρ(θ)θ. Throws DomainError when Ω is all of ℝⁿ or ρ is
// not smooth and positive at θ.
HypersurfaceSample hypersurface_geometry(const DomainSpec& domain, std::span<const double> theta,
                                         double direction_weight = 1.0);

std::vector<HypersurfaceSample> sample_boundary(const DomainSpec& domain, const SphereRule& rule);

// Closed-form mean curvature of Σ x_i²/a_i² = 1 at a point on it.
double ellipsoid_mean_curvature(std::span<const double> semi_axes, std::span<const double> point);

}  // namespace graphmass
