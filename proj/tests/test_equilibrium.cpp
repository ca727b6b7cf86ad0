#include <doctest.h>

#include <cmath>
#include <numbers>

#include <boost/math/quadrature/sinh_sinh.hpp>

#include "hlbm/builtin_models.hpp"
#include "hlbm/equilibrium.hpp"
#include "oracles.hpp"

using namespace hlbm;

namespace {

// integral of v^n rho (pi theta)^(-1/2) exp(-(v - u)^2 / theta) dv
double shifted_gaussian_integral(int n, double u, double theta) {
  boost::math::quadrature::sinh_sinh<double> integrator;
  auto f = [=](double v) {
    const double z = (v - u) * (v - u) / theta;
    return z > 700.0 ? 0.0 : std::pow(v, n) * std::exp(-z);
  };
  return integrator.integrate(f, 1e-14) / std::sqrt(std::numbers::pi * theta);
}

bool close(double got, double expected, double rel) { return std::abs(got - expected) <= rel * std::max(1.0, std::abs(expected)); }

}  // namespace

TEST_CASE("target_moment examples") {
  MacroState s{3.0, {0.1, -0.2}, 1.2};
  CHECK(target_moment({0, 0}, s) == 3.0);
  CHECK(target_moment({2, 0}, MacroState{}) == 0.5);
  const MacroState shifted{2.0, {0.1, 0.0}, 1.0};
  CHECK(target_moment({1, 0}, shifted) == doctest::Approx(0.2).epsilon(1e-15));
  CHECK(target_moment({1, 0}, shifted) == doctest::Approx(2.0 * shifted_gaussian_integral(1, 0.1, 1.0)).epsilon(1e-12));
  CHECK_THROWS_AS(target_moment({4, 1}, s), std::invalid_argument);
}

TEST_CASE("target_moment agrees with quadrature and the closed-form tensors") {
  const MacroState s{1.7, {0.3, -0.15, 0.05}, 0.85};
  for (const auto& a : oracle::indices_up_to(3, 4)) {
    CAPTURE(a.to_string());
    double quad = s.rho;
    for (int axis = 0; axis < 3; ++axis) quad *= shifted_gaussian_integral(a[axis], s.u[axis], s.theta);
    CHECK(close(target_moment(a, s), quad, 1e-11));
    CHECK(close(target_moment(a, s), oracle::maxwell_moment(a, s), 1e-14));
  }
  // order-2 tensor rho (u_a u_b + theta/2 delta_ab)
  CHECK(close(target_moment({1, 1, 0}, s), s.rho * s.u[0] * s.u[1], 1e-15));
  CHECK(close(target_moment({0, 2, 0}, s), s.rho * (s.u[1] * s.u[1] + s.theta / 2), 1e-15));
  // order-4 with all three delta pairings: xxxx -> u^4 + 6 u^2 theta/2 + 3 (theta/2)^2
  const double ux = s.u[0], h = s.theta / 2;
  CHECK(close(target_moment({4, 0, 0}, s), s.rho * (std::pow(ux, 4) + 6 * ux * ux * h + 3 * h * h), 1e-14));
}

TEST_CASE("Hermite basis") {
  HermiteBasis basis(2);
  CHECK(basis.size() == 15);
  CHECK(basis.index(0) == MultiIndex{0, 0});
  CHECK(basis.find({2, 2}) >= 0);
  CHECK(basis.find({5, 0}) == -1);
  CHECK(basis.norm(basis.find({2, 1})) == 8.0 * 2.0);
  const std::array<double, 2> v{0.5, -1.0};
  // H_2(x) = 4x^2 - 2, H_1(y) = 2y
  CHECK(basis.evaluate(basis.find({2, 1}), v) == doctest::Approx((4 * 0.25 - 2) * -2.0).epsilon(1e-15));
  CHECK(HermiteBasis(3).size() == 35);
}

TEST_CASE("build_expansion reference states") {
  for (int dim = 1; dim <= 4; ++dim) {
    for (double rho : {1.0, 3.0}) {
      const auto e = build_expansion(MacroState{rho, {}, 1.0}, dim);
      CHECK(e.hermite_coefficients[0] == rho);
      for (std::size_t k = 1; k < e.hermite_coefficients.size(); ++k) CHECK(e.hermite_coefficients[k] == 0.0);
    }
  }
  const auto e = build_expansion(MacroState{1.0, {0.1, 0.0}, 1.1}, 2);
  CHECK(e.to_string().substr(0, 8) == "0 0 : 1\n");
}

TEST_CASE("closed-form and moment-matched coefficients agree to 1e-12") {
  for (int dim = 1; dim <= 3; ++dim) {
    for (const auto& s : oracle::random_states(dim, 40, 11u + dim)) {
      const auto a = build_expansion(s, dim).monomial_coefficients();
      const auto b = moment_matched_monomial_coefficients(s, dim);
      REQUIRE(a.size() == b.size());
      for (std::size_t k = 0; k < a.size(); ++k) CHECK(close(a[k], b[k], 1e-12));
    }
  }
}

TEST_CASE("discrete_equilibrium examples") {
  const auto d2 = refined_d2q33();
  const auto f = discrete_equilibrium(d2, MacroState{});
  for (int i = 0; i < d2.size(); ++i) CHECK(f[i] == doctest::Approx(d2.weight(i)).epsilon(1e-15));

  const auto d3 = published_d3q95();
  const auto g = discrete_equilibrium(d3, MacroState{4.0, {}, 1.0});
  for (int i = 0; i < d3.size(); ++i) CHECK(g[i] == doctest::Approx(4.0 * d3.weight(i)).epsilon(1e-15));

  const MacroState s{1.0, {0.2, 0.1}, 0.9};
  const auto h = discrete_equilibrium(d2, s);
  for (const auto& a : oracle::indices_up_to(2, 4)) {
    CAPTURE(a.to_string());
    CHECK(close(oracle::discrete_moment(d2, h, a), oracle::maxwell_moment(a, s), 1e-12));
  }
  CHECK(close(oracle::discrete_moment(d2, h, {2, 0}) + oracle::discrete_moment(d2, h, {0, 2}),
              s.rho * (0.04 + 0.01 + 2 * s.theta / 2), 1e-12));
}

TEST_CASE("moment matching over sampled states for both models") {
  for (const auto& model : {refined_d2q33(), refined_d3q95()}) {
    CAPTURE(model.name());
    const auto indices = oracle::indices_up_to(model.dim(), 4);
    EquilibriumKernel kernel(model);
    std::vector<double> f(model.size());
    for (const auto& s : oracle::random_states(model.dim(), 30, 7u)) {
      kernel.evaluate(s, f);
      const auto reference = discrete_equilibrium(model, s);
      for (int i = 0; i < model.size(); ++i) CHECK(close(f[i], reference[i], 1e-14));
      for (const auto& a : indices) CHECK(close(oracle::discrete_moment(model, f, a), oracle::maxwell_moment(a, s), 1e-12));
    }
  }
}

TEST_CASE("equilibrium is linear in rho and has Galilean parity") {
  const auto model = refined_d3q95();
  for (const auto& s : oracle::random_states(3, 10, 3u)) {
    MacroState scaled = s;
    scaled.rho = 2.0 * s.rho;
    const auto f = discrete_equilibrium(model, s);
    const auto g = discrete_equilibrium(model, scaled);
    for (int i = 0; i < model.size(); ++i) CHECK(g[i] == 2.0 * f[i]);

    MacroState mirrored = s;
    for (auto& x : mirrored.u) x = -x;
    const auto h = discrete_equilibrium(model, mirrored);
    for (const auto& a : oracle::indices_up_to(3, 4)) {
      const double m = oracle::discrete_moment(model, f, a);
      const double n = oracle::discrete_moment(model, h, a);
      CHECK(close(n, a.order() % 2 ? -m : m, 1e-13));
    }
  }
}
