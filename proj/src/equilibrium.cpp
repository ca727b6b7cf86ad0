#include "hlbm/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

#include <Eigen/Dense>
#include <fmt/format.h>

namespace hlbm {

namespace {

constexpr int kMaxHermite = kExpansionDegree;

// Monomial coefficients of the physicists' Hermite polynomials H_0..H_4.
constexpr double kHermiteMonomial[kMaxHermite + 1][kMaxHermite + 1] = {
    {1, 0, 0, 0, 0},
    {0, 2, 0, 0, 0},
    {-2, 0, 4, 0, 0},
    {0, -12, 0, 8, 0},
    {12, 0, -48, 0, 16},
};

double hermite(int n, double x) {
  double h0 = 1.0;
  if (n == 0) return h0;
  double h1 = 2.0 * x;
  for (int k = 1; k < n; ++k) {
    double h2 = 2.0 * x * h1 - 2.0 * k * h0;
    h0 = h1;
    h1 = h2;
  }
  return h1;
}

// E[H_k(X)] for k = 0..4 with X ~ N(u, theta/2). From the generating function
// E[exp(2tX - t^2)] = exp(2ut + (theta - 1) t^2).
std::array<double, kMaxHermite + 1> hermite_expectations(double u, double theta) {
  const double s = theta - 1.0;
  const double u2 = u * u;
  return {1.0, 2.0 * u, 4.0 * u2 + 2.0 * s, 8.0 * u2 * u + 12.0 * u * s, 16.0 * u2 * u2 + 48.0 * u2 * s + 12.0 * s * s};
}

double factorial(int n) {
  double f = 1.0;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

double binomial(int n, int k) { return factorial(n) / (factorial(k) * factorial(n - k)); }

// E[X^n] for X ~ N(mean, variance).
double gaussian_raw_moment(int n, double mean, double variance) {
  double sum = 0.0;
  for (int j = 0; 2 * j <= n; ++j) {
    sum += binomial(n, 2 * j) * std::pow(mean, n - 2 * j) * std::pow(variance, j) * double_factorial(2 * j - 1);
  }
  return sum;
}

}  // namespace

bool MacroState::valid() const {
  return std::isfinite(rho) && rho > 0.0 && std::isfinite(theta) && theta > 0.0 &&
         std::all_of(u.begin(), u.end(), [](double x) { return std::isfinite(x); });
}

double target_moment(const MultiIndex& a, const MacroState& state) {
  if (a.order() > kExpansionDegree) {
    throw std::invalid_argument(fmt::format("target_moment: order {} exceeds {}", a.order(), kExpansionDegree));
  }
  double value = state.rho;
  for (int axis = 0; axis < a.dim(); ++axis) value *= gaussian_raw_moment(a[axis], state.u[axis], 0.5 * state.theta);
  return value;
}

HermiteBasis::HermiteBasis(int dim, int degree) : dim_(dim), degree_(degree) {
  if (dim < 1 || dim > kMaxDim) throw std::invalid_argument(fmt::format("HermiteBasis: dimension {} unsupported", dim));
  if (degree < 0 || degree > kMaxHermite) throw std::invalid_argument(fmt::format("HermiteBasis: degree {} unsupported", degree));
  std::vector<int> e(dim, 0);
  std::function<void(int, int)> fill = [&](int axis, int remaining) {
    if (axis == dim) {
      indices_.emplace_back(e);
      return;
    }
    for (int k = 0; k <= remaining; ++k) {
      e[axis] = k;
      fill(axis + 1, remaining - k);
    }
    e[axis] = 0;
  };
  fill(0, degree);
  std::sort(indices_.begin(), indices_.end(), [](const MultiIndex& x, const MultiIndex& y) {
    if (x.order() != y.order()) return x.order() < y.order();
    return x > y;
  });
  for (const auto& n : indices_) {
    double norm = 1.0;
    for (int k : n.exponents()) norm *= std::ldexp(factorial(k), k);
    norms_.push_back(norm);
  }
}

double HermiteBasis::evaluate(int k, std::span<const double> v) const {
  double value = 1.0;
  for (int axis = 0; axis < dim_; ++axis) value *= hermite(indices_[k][axis], v[axis]);
  return value;
}

int HermiteBasis::find(const MultiIndex& a) const {
  auto it = std::find(indices_.begin(), indices_.end(), a);
  return it == indices_.end() ? -1 : static_cast<int>(it - indices_.begin());
}

double EquilibriumExpansion::evaluate(std::span<const double> v) const {
  double sum = 0.0;
  for (int k = 0; k < basis.size(); ++k) sum += hermite_coefficients[k] * basis.evaluate(k, v);
  return sum;
}

std::vector<double> EquilibriumExpansion::monomial_coefficients() const {
  std::vector<double> monomial(basis.size(), 0.0);
  std::vector<int> powers(dim());
  for (int k = 0; k < basis.size(); ++k) {
    const auto& n = basis.index(k);
    // Expand prod_a H_{n_a}(v_a) term by term.
    std::function<void(int, double)> expand = [&](int axis, double coeff) {
      if (coeff == 0.0) return;
      if (axis == dim()) {
        monomial[basis.find(MultiIndex(powers))] += hermite_coefficients[k] * coeff;
        return;
      }
      for (int j = 0; j <= n[axis]; ++j) {
        powers[axis] = j;
        expand(axis + 1, coeff * kHermiteMonomial[n[axis]][j]);
      }
    };
    expand(0, 1.0);
  }
  return monomial;
}

std::string EquilibriumExpansion::to_string() const {
  std::string out;
  for (int k = 0; k < basis.size(); ++k) {
    out += fmt::format("{} : {:.17g}\n", fmt::join(basis.index(k).exponents(), " "), hermite_coefficients[k]);
  }
  return out;
}

EquilibriumExpansion build_expansion(const MacroState& state, int dim) {
  if (!state.valid()) throw std::invalid_argument("build_expansion: requires rho > 0 and theta > 0");
  EquilibriumExpansion expansion{HermiteBasis(dim), {}};
  std::vector<std::array<double, kMaxHermite + 1>> expectations;
  for (int axis = 0; axis < dim; ++axis) expectations.push_back(hermite_expectations(state.u[axis], state.theta));
  for (int k = 0; k < expansion.basis.size(); ++k) {
    double c = state.rho / expansion.basis.norm(k);
    for (int axis = 0; axis < dim; ++axis) c *= expectations[axis][expansion.basis.index(k)[axis]];
    expansion.hermite_coefficients.push_back(c);
  }
  return expansion;
}

std::vector<double> moment_matched_monomial_coefficients(const MacroState& state, int dim) {
  if (!state.valid()) throw std::invalid_argument("moment_matched_monomial_coefficients: invalid state");
  HermiteBasis basis(dim);
  const int n = basis.size();
  Eigen::MatrixXd gram(n, n);
  Eigen::VectorXd rhs(n);
  std::vector<int> sum(dim);
  for (int r = 0; r < n; ++r) {
    for (int k = 0; k < n; ++k) {
      for (int axis = 0; axis < dim; ++axis) sum[axis] = basis.index(r)[axis] + basis.index(k)[axis];
      gram(r, k) = normalized_gaussian_moment(MultiIndex(sum));
    }
    rhs[r] = target_moment(basis.index(r), state);
  }
  Eigen::VectorXd x = gram.ldlt().solve(rhs);
  return {x.data(), x.data() + n};
}

EquilibriumKernel::EquilibriumKernel(const VelocityModel& model) : basis_(model.dim()), q_(model.size()) {
  const int nb = basis_.size();
  for (const auto& index : basis_.indices()) {
    std::array<int, kMaxDim> e{};
    std::copy(index.exponents().begin(), index.exponents().end(), e.begin());
    exponents_.push_back(e);
  }
  table_.resize(static_cast<std::size_t>(q_) * nb);
  std::vector<double> v(model.dim());
  for (int i = 0; i < q_; ++i) {
    for (int axis = 0; axis < model.dim(); ++axis) v[axis] = model.velocity(i, axis);
    for (int k = 0; k < nb; ++k) {
      table_[static_cast<std::size_t>(i) * nb + k] = model.weight(i) * basis_.evaluate(k, v) / basis_.norm(k);
    }
  }
}

void EquilibriumKernel::evaluate(const MacroState& state, std::span<double> f_eq) const {
  const int dim = basis_.dim();
  const int nb = basis_.size();
  std::array<std::array<double, kMaxHermite + 1>, kMaxDim> expectations;
  for (int axis = 0; axis < dim; ++axis) expectations[axis] = hermite_expectations(state.u[axis], state.theta);

  std::array<double, 128> coeff;  // C(4 + 4, 4) = 70 basis functions at most
  for (int k = 0; k < nb; ++k) {
    double c = state.rho;
    for (int axis = 0; axis < dim; ++axis) c *= expectations[axis][exponents_[k][axis]];
    coeff[k] = c;
  }
  for (int i = 0; i < q_; ++i) {
    const double* row = table_.data() + static_cast<std::size_t>(i) * nb;
    double sum = 0.0;
    for (int k = 0; k < nb; ++k) sum += row[k] * coeff[k];
    f_eq[i] = sum;
  }
}

std::vector<double> discrete_equilibrium(const VelocityModel& model, const MacroState& state) {
  if (!state.valid()) throw std::invalid_argument("discrete_equilibrium: requires rho > 0 and theta > 0");
  std::vector<double> f(model.size());
  EquilibriumKernel(model).evaluate(state, f);
  return f;
}

}  // namespace hlbm
