#ifndef HLBM_EQUILIBRIUM_HPP_
#define HLBM_EQUILIBRIUM_HPP_

#include <array>
#include <span>
#include <string>
#include <vector>

#include "hlbm/moment_conditions.hpp"
#include "hlbm/stencil.hpp"

namespace hlbm {

// Density, velocity and dimensionless temperature at a node. Components of u
// beyond the model dimension are ignored and kept at zero.
struct MacroState {
  double rho = 1.0;
  std::array<double, kMaxDim> u{};
  double theta = 1.0;

  bool valid() const;
};

inline constexpr int kExpansionDegree = 4;

// Moment of the Maxwell-Boltzmann distribution
//   rho (pi theta)^(-D/2) exp(-|v - u|^2 / theta),
// i.e. each axis is Gaussian with mean u_a and variance theta / 2. At
// rho = 1, u = 0, theta = 1 this is normalized_gaussian_moment(a).
// Orders above kExpansionDegree are rejected.
double target_moment(const MultiIndex& a, const MacroState& state);

// Tensor-product Hermite polynomials H_n(v) = prod_a H_{n_a}(v_a) (physicists'
// convention, orthogonal under exp(-v^2)) of total degree <= 4.
class HermiteBasis {
public:
  explicit HermiteBasis(int dim, int degree = kExpansionDegree);

  int dim() const { return dim_; }
  int degree() const { return degree_; }
  int size() const { return static_cast<int>(indices_.size()); }
  const MultiIndex& index(int k) const { return indices_[k]; }
  const std::vector<MultiIndex>& indices() const { return indices_; }
  // <H_n, H_n> under the unit-mass Gaussian: prod_a 2^{n_a} n_a!.
  double norm(int k) const { return norms_[k]; }
  double evaluate(int k, std::span<const double> v) const;
  // Position of `a` in indices(), or -1.
  int find(const MultiIndex& a) const;

private:
  int dim_;
  int degree_;
  std::vector<MultiIndex> indices_;
  std::vector<double> norms_;
};

// P(v) = sum_n coefficient_n H_n(v), so that f_eq(v_i) = w_i P(v_i).
struct EquilibriumExpansion {
  HermiteBasis basis;
  std::vector<double> hermite_coefficients;

  int dim() const { return basis.dim(); }
  int degree() const { return basis.degree(); }
  double evaluate(std::span<const double> v) const;
  // Coefficients of P in the monomial basis, indexed like basis.indices().
  std::vector<double> monomial_coefficients() const;
  // `multiindex : coefficient` lines (Hermite coefficients).
  std::string to_string() const;
};

// Hermite projection of the Maxwell-Boltzmann distribution onto degree <= 4,
// in closed form: coefficient_n = rho prod_a E[H_{n_a}(X_a)] / (2^{n_a} n_a!).
EquilibriumExpansion build_expansion(const MacroState& state, int dim);

// Second route to the same polynomial: monomial coefficients of the unique
// degree <= 4 P whose Gaussian moments up to order 4 equal target_moment,
// from the Gram system G_ab = normalized_gaussian_moment(a + b).
std::vector<double> moment_matched_monomial_coefficients(const MacroState& state, int dim);

// Precomputed w_i H_n(v_i) / |H_n|^2 table for one model; evaluation is
// allocation free and reentrant.
class EquilibriumKernel {
public:
  explicit EquilibriumKernel(const VelocityModel& model);

  int size() const { return q_; }
  int dim() const { return basis_.dim(); }
  void evaluate(const MacroState& state, std::span<double> f_eq) const;

private:
  HermiteBasis basis_;
  int q_;
  std::vector<std::array<int, kMaxDim>> exponents_;  // per basis function
  std::vector<double> table_;                         // q_ x basis size, row-major
};

// f_i^eq = w_i P(c e_i) over the expanded velocity set.
std::vector<double> discrete_equilibrium(const VelocityModel& model, const MacroState& state);

}  // namespace hlbm

#endif  // HLBM_EQUILIBRIUM_HPP_
