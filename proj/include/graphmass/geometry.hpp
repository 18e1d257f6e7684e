#pragma once

// Pointwise geometry of the graph M = {(x, f(x))} ⊂ ℝⁿ⁺ᵐ with the induced
// metric, computed from a 2-jet of f. Index conventions follow the formulas
// directly: i, j, k, l are base indices, α, β, γ, μ, θ, ν normal ones.

#include <span>
#include <vector>

#include "graphmass/jets.hpp"
#include "graphmass/tensor.hpp"

namespace graphmass {

struct Metric {
  SymMatrix g;       // g_ij = δ_ij + f_i^α f_j^α
  SymMatrix g_inv;   // g^ij
  double det = 1.0;  // G
  Matrix m_tensor;   // M_ij = δ_ij - g^ij
};

struct NormalGram {
  SymMatrix u;      // U_αβ = δ_αβ + <Df^α, Df^β>
  SymMatrix u_inv;  // U^αβ
  double det = 1.0;
};

Metric induced_metric(const Jet2& jet);
NormalGram normal_gram(const Jet2& jet);

// R_ilkj = <R(∂_i, ∂_l)∂_k, ∂_j> from the Gauss equation.
class Riemann {
 public:
  explicit Riemann(int n) : n_(n), r_(static_cast<std::size_t>(n) * n * n * n, 0.0) {}
  int dim() const noexcept { return n_; }
  double operator()(int i, int l, int k, int j) const noexcept { return r_[idx(i, l, k, j)]; }
  double& operator()(int i, int l, int k, int j) noexcept { return r_[idx(i, l, k, j)]; }

 private:
  std::size_t idx(int i, int l, int k, int j) const noexcept {
    return ((static_cast<std::size_t>(i) * n_ + l) * n_ + k) * n_ + j;
  }
  int n_;
  std::vector<double> r_;
};

Riemann riemann_gauss(const Jet2& jet);

// S = g^ij g^kl R_ilkj.
double scalar_curvature(const Jet2& jet);

// Independent route: Christoffel symbols of the finite-differenced metric
// field, then Riemann and its double trace. Never touches the Gauss
// equation. Throws DomainError if the stencil leaves the domain.
double scalar_curvature_intrinsic(const FunctionSpec& spec, std::span<const double> x, double h);

// (A^α)_i^j = f_ik^α g^kj; alpha is 0-based. Throws std::out_of_range.
Matrix shape_operator(const Jet2& jet, int alpha);

// Normal curvature scalar S⊥ as a closed contraction of first and second
// derivatives (no shape operators).
double normal_scalar(const Jet2& jet);

// S⊥ = Σ g(A^μ∇f^μ, A^γ∇f^γ) - g(A^μ∇f^γ, A^γ∇f^μ), with ∇f^α = g^jk f_k^α ∂_j.
double normal_scalar_ricci(const Jet2& jet);

// The vector field X with ∇·X = S + S⊥.
std::vector<double> flux_field(const Jet2& jet);

// ADM surface integrand (f_i^α f_kk^α - f_k^α f_ik^α) ν_i.
double adm_integrand(const Jet2& jet, std::span<const double> normal);
// The same integrand assembled from metric derivatives (g_ij,i - g_ii,j) ν_j.
double adm_integrand_metric(const Jet2& jet, std::span<const double> normal);

struct CurvatureSample {
  double s = 0.0;
  double s_perp = 0.0;
  std::vector<double> flux;
  double div_residual = 0.0;
};

// Central-difference divergence of flux_field with step h.
double flux_divergence(const FunctionSpec& spec, std::span<const double> x, double h);

// |S + S⊥ - div X|.
double divergence_residual(const FunctionSpec& spec, std::span<const double> x, double h);

CurvatureSample curvature_sample(const FunctionSpec& spec, std::span<const double> x, double h);

}  // namespace graphmass
