#pragma once

// Graph maps f : ℝⁿ ⊃ domain → ℝᵐ and their 2-jets.

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "graphmass/expression.hpp"
#include "graphmass/tensor.hpp"

namespace graphmass {

namespace kinds {

struct Zero {};

// a·x + b
struct Linear {
  std::vector<double> coefficients;
  double offset = 0.0;
};

// Radial profile φ(|x|) with φ' = sqrt(2m r^{2-n} / (1 - 2m r^{2-n})); its
// graph carries the Riemannian Schwarzschild metric of mass m. φ vanishes
// on the horizon r₀ = (2m)^{1/(n-2)}.
struct SchwarzschildRadial {
  double mass = 1.0;
};

// A·exp(-|x - c|² / w²); an empty center means the origin.
struct GaussianBump {
  double amplitude = 1.0;
  double width = 1.0;
  std::vector<double> center;
};

// A·(|x|² + s²)^{γ/2}. For γ = 1/2 and n = 3 the ADM mass is A²/8.
struct RadialProfile {
  double amplitude = 1.0;
  double scale = 1.0;
  double exponent = 0.5;
};

struct Formula {
  Expression expression;
};

struct Sum;

}  // namespace kinds

struct ScalarSpec {
  using Kind = std::variant<kinds::Zero, kinds::Linear, kinds::SchwarzschildRadial,
                            kinds::GaussianBump, kinds::RadialProfile, kinds::Formula,
                            std::shared_ptr<const kinds::Sum>>;
  Kind kind;

  std::string kind_name() const;
};

namespace kinds {
struct Sum {
  std::vector<ScalarSpec> terms;
};
}  // namespace kinds

ScalarSpec sum_of(std::vector<ScalarSpec> terms);

// A map ℝⁿ → ℝᵐ given component-wise.
struct FunctionSpec {
  int n = 0;
  std::vector<ScalarSpec> components;

  int m() const noexcept { return static_cast<int>(components.size()); }

  static FunctionSpec zero(int n, int m);
  static FunctionSpec linear(const Matrix& l);  // rows are components
  static FunctionSpec schwarzschild(int n, double mass);
  static FunctionSpec single(int n, ScalarSpec component);
};

// Throws ParseError. A vector map is a list of scalar expressions.
FunctionSpec parse_expression(std::string_view text, int n = 0);
FunctionSpec parse_expression(std::span<const std::string> texts, int n = 0);

// Horizon radius (2m)^{1/(n-2)}.
double schwarzschild_horizon(int n, double mass);

struct Jet2 {
  int n = 0;
  int m = 0;
  std::array<double, kMaxDim> value{};
  Matrix d1;      // d1(α, i) = f_i^α
  Tensor3Sym d2;  // d2(α, i, j) = f_ij^α

  Jet2() = default;
  Jet2(int n_, int m_) : n(n_), m(m_), d1(m_, n_), d2(m_, n_) {}
};

enum class JetValues { compute, skip };

// Exact jet (closed forms for catalog kinds, Taylor arithmetic for
// expressions). With JetValues::skip, value[] is left at zero; only the
// Schwarzschild antiderivative for n ≥ 4 is expensive. Throws DomainError
// outside the map's domain of definition or on non-finite results.
Jet2 eval_jet(const FunctionSpec& spec, std::span<const double> x,
              JetValues values = JetValues::compute);

double default_fd_step(std::span<const double> x);

// Central-difference jet from function values only; h ≤ 0 selects
// default_fd_step(x).
Jet2 fd_jet(const FunctionSpec& spec, std::span<const double> x, double h = 0.0);

// ---------------------------------------------------------------------------
// Domains Ω ⊂ ℝⁿ; the graph lives over ℝⁿ \ Ω.

namespace shapes {
struct Ball {
  double radius = 1.0;
};
struct Ellipsoid {
  std::vector<double> semi_axes;
};
// ρ as an expression in the unit-vector components x1..xn.
struct RadialFormula {
  Expression expression;
};
}  // namespace shapes

struct DomainSpec {
  enum class Kind { all_of_rn, exterior_of_star_shaped };
  using Shape = std::variant<shapes::Ball, shapes::Ellipsoid, shapes::RadialFormula>;

  Kind kind = Kind::all_of_rn;
  Shape shape = shapes::Ball{};

  static DomainSpec whole_space() { return {}; }
  static DomainSpec exterior_of_ball(double radius) {
    return {Kind::exterior_of_star_shaped, shapes::Ball{radius}};
  }
  static DomainSpec exterior_of_ellipsoid(std::vector<double> axes) {
    return {Kind::exterior_of_star_shaped, shapes::Ellipsoid{std::move(axes)}};
  }

  bool has_boundary() const noexcept { return kind == Kind::exterior_of_star_shaped; }

  // ρ(θ) for a unit vector θ; 0 for the whole space.
  double boundary_radius(std::span<const double> unit) const;
  // ρ(x/|x|) as a 0-homogeneous function of x, with derivatives.
  Taylor2 boundary_radius(std::span<const Taylor2> unit) const;
  // True when |x| ≥ ρ(x/|x|).
  bool contains(std::span<const double> x) const;
};

}  // namespace graphmass
