#pragma once

// Residuals of the tensor identities behind the divergence form S + S⊥ = ∇·X.
// Algebraic items take a jet (plus explicit derivative data where needed);
// differential items finite-difference exact jets on a central stencil.

#include <array>
#include <span>
#include <vector>

#include "graphmass/jets.hpp"

namespace graphmass {

struct IdentityResiduals {
  // [0] f_i^α U^αβ = f_j^β g^ji, [1] M_ij = f_i^α f_k^α g^kj = f_i^α f_j^β U^αβ,
  // [2] g(∇f^α, ∇f^β) = δ_αβ - U^αβ.
  std::array<double, 3> gram{};
  // [0] divergence form of the flat contraction, [1] symmetry of the mixed
  // contractions, [2] the mixed contraction as a derivative expression,
  // [3] the M·M contraction.
  std::array<double, 4> contraction{};
  double antisym_cf = 0.0;          // C_ik^αβ F_ik^βα
  double normal_commutator = 0.0;   // V_ik^αβ F_ik^βα + S⊥
  double gauss_vs_intrinsic = 0.0;  // |S - S_intrinsic|
  double ricci_vs_formula = 0.0;    // |S⊥ - S⊥_ricci|
  double divergence = 0.0;          // |S + S⊥ - ∇·X|

  double max_algebraic() const;
  double max_differential() const;
};

// Derivatives one order beyond a jet.
struct ThirdOrderData {
  int n = 0;
  int m = 0;
  std::vector<double> u_inv_grad;  // [α][β][i] = ∂_i U^αβ
  std::vector<double> d3;          // [μ][i][k][l] = ∂_l f_ik^μ, symmetric in (i, k)

  ThirdOrderData(int n_, int m_)
      : n(n_), m(m_),
        u_inv_grad(static_cast<std::size_t>(m_) * m_ * n_, 0.0),
        d3(static_cast<std::size_t>(m_) * n_ * n_ * n_, 0.0) {}

  double& du(int a, int b, int i) { return u_inv_grad[(a * m + b) * n + i]; }
  double du(int a, int b, int i) const { return u_inv_grad[(a * m + b) * n + i]; }
  double& f3(int mu, int i, int k, int l) { return d3[((mu * n + i) * n + k) * n + l]; }
  double f3(int mu, int i, int k, int l) const { return d3[((mu * n + i) * n + k) * n + l]; }
};

std::array<double, 3> gram_residuals(const Jet2& jet);
double mixed_symmetry_residual(const Jet2& jet);
double mm_contraction_residual(const Jet2& jet);
// Vanishes for any u_inv_grad and any d3 symmetric in its first two base indices.
double cf_contraction(const Jet2& jet, const ThirdOrderData& third);

// Central differences of the exact jet with step h.
ThirdOrderData fd_third_order(const FunctionSpec& spec, std::span<const double> x, double h);

// Full suite at x; throws DomainError if the stencil leaves the domain.
IdentityResiduals check_identities(const FunctionSpec& spec, std::span<const double> x, double h);

}  // namespace graphmass
