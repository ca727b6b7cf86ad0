#ifndef HLBM_RIEMANN_HPP_
#define HLBM_RIEMANN_HPP_

#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace hlbm {

// One-dimensional ideal-gas state in lattice units. With the kinetic
// equation of state p = rho theta / 2.
struct PrimitiveState {
  double rho = 1.0;
  double velocity = 0.0;
  double pressure = 1.0;

  double sound_speed(double gamma) const;
  double theta() const { return 2.0 * pressure / rho; }
};

// Translational degrees of freedom only: gamma = (D + 2) / D.
constexpr double kinetic_gamma(int dim) { return (dim + 2.0) / dim; }

enum class WaveKind { shock, rarefaction };

class VacuumError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct RiemannSolution {
  double gamma = 5.0 / 3.0;
  PrimitiveState left;
  PrimitiveState right;
  double p_star = 0.0;
  double u_star = 0.0;
  double rho_star_left = 0.0;
  double rho_star_right = 0.0;
  WaveKind left_wave = WaveKind::rarefaction;
  WaveKind right_wave = WaveKind::rarefaction;
  // Signal speeds. For a shock head == tail == shock speed; for a
  // rarefaction the head faces the undisturbed state.
  double left_head = 0.0;
  double left_tail = 0.0;
  double right_head = 0.0;
  double right_tail = 0.0;
  int iterations = 0;

  PrimitiveState star_left() const { return {rho_star_left, u_star, p_star}; }
  PrimitiveState star_right() const { return {rho_star_right, u_star, p_star}; }
};

// f_L(p) + f_R(p) + (u_R - u_L); monotonically increasing in p.
double pressure_function(double p, const PrimitiveState& left, const PrimitiveState& right, double gamma);

// Root of the pressure function by bracketed Newton with bisection fallback,
// to |dp| <= 1e-12 p*. Throws VacuumError when the data generate vacuum.
std::pair<double, double> star_state(const PrimitiveState& left, const PrimitiveState& right, double gamma);

RiemannSolution solve_riemann(const PrimitiveState& left, const PrimitiveState& right, double gamma);

// Self-similar solution at xi = (x - x0) / t.
PrimitiveState sample(const RiemannSolution& solution, double xi);

std::vector<PrimitiveState> shock_tube_reference(const PrimitiveState& left, const PrimitiveState& right, double gamma,
                                                 double t, std::span<const double> x, double x0);

// Largest relative imbalance of F(U_b) - F(U_a) - s (U_b - U_a) over the mass,
// momentum and energy components.
double rankine_hugoniot_residual(const PrimitiveState& a, const PrimitiveState& b, double speed, double gamma);

}  // namespace hlbm

#endif  // HLBM_RIEMANN_HPP_
