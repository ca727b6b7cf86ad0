#include "hlbm/riemann.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include <fmt/format.h>

namespace hlbm {

double PrimitiveState::sound_speed(double gamma) const { return std::sqrt(gamma * pressure / rho); }

namespace {

void check(const PrimitiveState& s, const char* side) {
  if (!(s.rho > 0.0) || !(s.pressure > 0.0) || !std::isfinite(s.velocity)) {
    throw std::invalid_argument(fmt::format("Riemann problem: {} state needs rho > 0 and p > 0", side));
  }
}

// Toro's f_K and its derivative.
std::pair<double, double> wave_function(double p, const PrimitiveState& s, double gamma) {
  const double a = s.sound_speed(gamma);
  if (p > s.pressure) {
    const double A = 2.0 / ((gamma + 1.0) * s.rho);
    const double B = (gamma - 1.0) / (gamma + 1.0) * s.pressure;
    const double root = std::sqrt(A / (p + B));
    return {(p - s.pressure) * root, root * (1.0 - 0.5 * (p - s.pressure) / (p + B))};
  }
  const double ratio = p / s.pressure;
  const double value = 2.0 * a / (gamma - 1.0) * (std::pow(ratio, (gamma - 1.0) / (2.0 * gamma)) - 1.0);
  const double slope = p > 0.0 ? std::pow(ratio, -(gamma + 1.0) / (2.0 * gamma)) / (s.rho * a) : INFINITY;
  return {value, slope};
}

double shock_density(double p, const PrimitiveState& s, double gamma) {
  const double r = p / s.pressure;
  const double g = (gamma - 1.0) / (gamma + 1.0);
  return s.rho * (r + g) / (g * r + 1.0);
}

double shock_speed_magnitude(double p, const PrimitiveState& s, double gamma) {
  return s.sound_speed(gamma) * std::sqrt((gamma + 1.0) / (2.0 * gamma) * p / s.pressure + (gamma - 1.0) / (2.0 * gamma));
}

struct Root {
  double p;
  int iterations;
};

Root solve_pressure(const PrimitiveState& left, const PrimitiveState& right, double gamma) {
  if (!(gamma > 1.0)) throw std::invalid_argument("Riemann problem: gamma must exceed 1");
  check(left, "left");
  check(right, "right");
  const double du = right.velocity - left.velocity;
  const double critical = 2.0 / (gamma - 1.0) * (left.sound_speed(gamma) + right.sound_speed(gamma));
  if (critical <= du) {
    throw VacuumError(fmt::format("Riemann problem generates vacuum: du = {} >= {}", du, critical));
  }

  auto f = [&](double p) {
    auto [fl, dl] = wave_function(p, left, gamma);
    auto [fr, dr] = wave_function(p, right, gamma);
    return std::pair{fl + fr + du, dl + dr};
  };

  // f(0) < 0 without vacuum; grow the upper end until f changes sign.
  double lo = 0.0;
  double hi = std::max(left.pressure, right.pressure);
  while (f(hi).first < 0.0) {
    lo = hi;
    hi *= 2.0;
  }
  if (f(hi).first == 0.0) return {hi, 0};

  // Two-rarefaction estimate as a starting point, clipped into the bracket.
  const double z = (gamma - 1.0) / (2.0 * gamma);
  const double aL = left.sound_speed(gamma);
  const double aR = right.sound_speed(gamma);
  double p = std::pow((aL + aR - 0.5 * (gamma - 1.0) * du) / (aL / std::pow(left.pressure, z) + aR / std::pow(right.pressure, z)), 1.0 / z);
  if (!(p > lo && p < hi)) p = 0.5 * (lo + hi);

  for (int it = 1; it <= 200; ++it) {
    auto [value, slope] = f(p);
    if (value == 0.0) return {p, it};
    if (value < 0.0) {
      lo = p;
    } else {
      hi = p;
    }
    double next = p - value / slope;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    const double change = std::abs(next - p);
    p = next;
    if (change <= 1e-12 * p || hi - lo <= 1e-12 * p) return {p, it};
  }
  throw std::runtime_error("Riemann problem: pressure iteration did not converge");
}

}  // namespace

double pressure_function(double p, const PrimitiveState& left, const PrimitiveState& right, double gamma) {
  return wave_function(p, left, gamma).first + wave_function(p, right, gamma).first + (right.velocity - left.velocity);
}

std::pair<double, double> star_state(const PrimitiveState& left, const PrimitiveState& right, double gamma) {
  const double p = solve_pressure(left, right, gamma).p;
  const double u = 0.5 * (left.velocity + right.velocity) +
                   0.5 * (wave_function(p, right, gamma).first - wave_function(p, left, gamma).first);
  return {p, u};
}

RiemannSolution solve_riemann(const PrimitiveState& left, const PrimitiveState& right, double gamma) {
  RiemannSolution s;
  s.gamma = gamma;
  s.left = left;
  s.right = right;
  const auto root = solve_pressure(left, right, gamma);
  s.iterations = root.iterations;
  s.p_star = root.p;
  s.u_star = 0.5 * (left.velocity + right.velocity) +
             0.5 * (wave_function(s.p_star, right, gamma).first - wave_function(s.p_star, left, gamma).first);

  if (s.p_star > left.pressure) {
    s.left_wave = WaveKind::shock;
    s.rho_star_left = shock_density(s.p_star, left, gamma);
    s.left_head = s.left_tail = left.velocity - shock_speed_magnitude(s.p_star, left, gamma);
  } else {
    s.left_wave = WaveKind::rarefaction;
    s.rho_star_left = left.rho * std::pow(s.p_star / left.pressure, 1.0 / gamma);
    s.left_head = left.velocity - left.sound_speed(gamma);
    s.left_tail = s.u_star - s.star_left().sound_speed(gamma);
  }
  if (s.p_star > right.pressure) {
    s.right_wave = WaveKind::shock;
    s.rho_star_right = shock_density(s.p_star, right, gamma);
    s.right_head = s.right_tail = right.velocity + shock_speed_magnitude(s.p_star, right, gamma);
  } else {
    s.right_wave = WaveKind::rarefaction;
    s.rho_star_right = right.rho * std::pow(s.p_star / right.pressure, 1.0 / gamma);
    s.right_head = right.velocity + right.sound_speed(gamma);
    s.right_tail = s.u_star + s.star_right().sound_speed(gamma);
  }
  return s;
}

PrimitiveState sample(const RiemannSolution& s, double xi) {
  const double g = s.gamma;
  if (xi <= s.u_star) {
    if (xi <= s.left_head) return s.left;
    if (xi >= s.left_tail) return s.star_left();
    // Inside the left fan.
    const double aL = s.left.sound_speed(g);
    const double factor = 2.0 / (g + 1.0) + (g - 1.0) / ((g + 1.0) * aL) * (s.left.velocity - xi);
    return {s.left.rho * std::pow(factor, 2.0 / (g - 1.0)),
            2.0 / (g + 1.0) * (aL + 0.5 * (g - 1.0) * s.left.velocity + xi),
            s.left.pressure * std::pow(factor, 2.0 * g / (g - 1.0))};
  }
  if (xi >= s.right_head) return s.right;
  if (xi <= s.right_tail) return s.star_right();
  const double aR = s.right.sound_speed(g);
  const double factor = 2.0 / (g + 1.0) - (g - 1.0) / ((g + 1.0) * aR) * (s.right.velocity - xi);
  return {s.right.rho * std::pow(factor, 2.0 / (g - 1.0)),
          2.0 / (g + 1.0) * (-aR + 0.5 * (g - 1.0) * s.right.velocity + xi),
          s.right.pressure * std::pow(factor, 2.0 * g / (g - 1.0))};
}

std::vector<PrimitiveState> shock_tube_reference(const PrimitiveState& left, const PrimitiveState& right, double gamma,
                                                 double t, std::span<const double> x, double x0) {
  if (!(t > 0.0)) throw std::invalid_argument("shock_tube_reference: t must be positive");
  const auto solution = solve_riemann(left, right, gamma);
  std::vector<PrimitiveState> profile;
  profile.reserve(x.size());
  for (double xk : x) profile.push_back(sample(solution, (xk - x0) / t));
  return profile;
}

double rankine_hugoniot_residual(const PrimitiveState& a, const PrimitiveState& b, double speed, double gamma) {
  auto conserved = [gamma](const PrimitiveState& s) {
    const double energy = s.pressure / (gamma - 1.0) + 0.5 * s.rho * s.velocity * s.velocity;
    return std::array{s.rho, s.rho * s.velocity, energy};
  };
  auto flux = [gamma](const PrimitiveState& s) {
    const double energy = s.pressure / (gamma - 1.0) + 0.5 * s.rho * s.velocity * s.velocity;
    return std::array{s.rho * s.velocity, s.rho * s.velocity * s.velocity + s.pressure, s.velocity * (energy + s.pressure)};
  };
  const auto Ua = conserved(a), Ub = conserved(b), Fa = flux(a), Fb = flux(b);
  double worst = 0.0;
  for (int k = 0; k < 3; ++k) {
    const double imbalance = (Fb[k] - Fa[k]) - speed * (Ub[k] - Ua[k]);
    const double scale = std::max({std::abs(Fa[k]), std::abs(Fb[k]), std::abs(speed * Ua[k]), std::abs(speed * Ub[k]), 1e-300});
    worst = std::max(worst, std::abs(imbalance) / scale);
  }
  return worst;
}

}  // namespace hlbm
