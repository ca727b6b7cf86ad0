#ifndef HLBM_LATTICE_HPP_
#define HLBM_LATTICE_HPP_

#include <array>
#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "hlbm/equilibrium.hpp"
#include "hlbm/stencil.hpp"

namespace hlbm {

enum class BoundaryKind { periodic, fixed_equilibrium };

// Per-axis boundary. For fixed_equilibrium, populations streaming in from
// outside the grid are the discrete equilibrium of `low` (coordinate < 0) or
// `high` (coordinate >= size), i.e. an equilibrium ghost slab as deep as the
// longest velocity.
struct AxisBoundary {
  BoundaryKind kind = BoundaryKind::periodic;
  MacroState low;
  MacroState high;
};

struct GridSpec {
  std::vector<int> dims;
  std::vector<AxisBoundary> boundaries;  // one per axis

  int dim() const { return static_cast<int>(dims.size()); }
  std::size_t node_count() const;
};

// Node-major storage: populations of node n occupy [n*q, (n+1)*q). Node
// index n = x_0 + X_0 (x_1 + X_1 (x_2 + ...)).
class PopulationField {
public:
  PopulationField() = default;
  PopulationField(std::size_t nodes, int q) : nodes_(nodes), q_(q), data_(nodes * static_cast<std::size_t>(q), 0.0) {}

  std::size_t nodes() const { return nodes_; }
  int q() const { return q_; }
  std::span<double> node(std::size_t n) { return {data_.data() + n * q_, static_cast<std::size_t>(q_)}; }
  std::span<const double> node(std::size_t n) const { return {data_.data() + n * q_, static_cast<std::size_t>(q_)}; }
  std::span<double> data() { return data_; }
  std::span<const double> data() const { return data_; }

private:
  std::size_t nodes_ = 0;
  int q_ = 0;
  std::vector<double> data_;
};

class SimulationError : public std::runtime_error {
public:
  SimulationError(const std::string& what, long step, std::vector<int> coords)
      : std::runtime_error(what), step_(step), coords_(std::move(coords)) {}
  long step() const { return step_; }
  const std::vector<int>& coords() const { return coords_; }

private:
  long step_;
  std::vector<int> coords_;
};

// rho = sum f, u = sum v f / rho, theta = (2/D)(sum |v|^2 f / rho - |u|^2).
// Throws std::domain_error when rho <= 0 or any moment is not finite.
MacroState macro_fields(std::span<const double> f, const VelocityModel& model);

// f <- (1 - omega) f + omega f_eq(state). `scratch` holds at least q values.
void collide(std::span<double> f, const MacroState& state, double omega, const EquilibriumKernel& kernel,
             std::span<double> scratch);

std::vector<double> collide(std::span<const double> f, const MacroState& state, double omega,
                            const VelocityModel& model);

struct Totals {
  double mass = 0.0;
  std::array<double, kMaxDim> momentum{};
  double energy = 0.0;  // sum |v|^2 f
};

// Pull streaming: dst(x, i) = src(x - e_i, i) with per-axis boundaries.
class Streamer {
public:
  Streamer(const VelocityModel& model, const GridSpec& grid);
  void operator()(const PopulationField& src, PopulationField& dst) const;

private:
  int q_;
  int dim_;
  std::vector<int> dims_;
  std::vector<std::size_t> strides_;
  // source coordinate per (velocity, axis, coordinate); kLow / kHigh mark
  // positions outside a fixed axis.
  std::vector<int> source_;
  std::vector<std::size_t> source_offset_;  // start of (velocity, axis) block
  std::vector<std::vector<double>> low_eq_, high_eq_;  // per axis, q values
};

class Lattice {
public:
  Lattice(VelocityModel model, GridSpec grid, double omega);

  using Initializer = std::function<MacroState(std::span<const int> coords)>;
  void initialize(const Initializer& init);

  // Collide every node, then stream (boundaries applied during streaming).
  void step();
  void run(long steps, const std::function<void(const Lattice&)>& after_step = {});

  const VelocityModel& model() const { return model_; }
  const GridSpec& grid() const { return grid_; }
  double omega() const { return omega_; }
  long steps_taken() const { return steps_; }

  std::size_t node_index(std::span<const int> coords) const;
  std::vector<int> node_coords(std::size_t n) const;
  MacroState macro_at(std::size_t n) const;
  Totals totals() const;

  const PopulationField& populations() const { return current_; }
  PopulationField& populations() { return current_; }

private:
  VelocityModel model_;
  GridSpec grid_;
  double omega_;
  EquilibriumKernel kernel_;
  Streamer streamer_;
  PopulationField current_;
  PopulationField next_;
  long steps_ = 0;
};

}  // namespace hlbm

#endif  // HLBM_LATTICE_HPP_
