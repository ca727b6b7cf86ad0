#ifndef HLBM_SHOCK_TUBE_HPP_
#define HLBM_SHOCK_TUBE_HPP_

#include <span>
#include <string>
#include <vector>

#include "hlbm/config.hpp"
#include "hlbm/lattice.hpp"
#include "hlbm/riemann.hpp"
#include "hlbm/snapshot.hpp"

namespace hlbm {

// Nodes sit at z_phys = index * c along the tube axis; the diaphragm lies
// halfway between nodes split - 1 and split.
struct ShockTubeSetup {
  PrimitiveState left;
  PrimitiveState right;
  double gamma = 5.0 / 3.0;
  double spacing = 1.0;
  double diaphragm = 0.0;
  int axis = 0;
  int length = 0;  // nodes along the axis
};

PrimitiveState primitive_from(const MacroState& state, int axis);
ShockTubeSetup shock_tube_setup(const SimulationConfig& config, double spacing);

// Largest step count keeping every wave head at least `margin_cells` nodes
// from either end of the tube.
long automatic_steps(const RiemannSolution& solution, const ShockTubeSetup& setup, double margin_cells = 50.0);

struct PlateauCheck {
  std::string name;
  double z_begin = 0.0;  // averaged window in z_phys
  double z_end = 0.0;
  int cells = 0;
  double rho_sim = 0.0;
  double rho_exact = 0.0;
  double theta_sim = 0.0;
  double theta_exact = 0.0;

  double rho_error() const;
  double theta_error() const;
};

struct PlateauReport {
  double time = 0.0;
  double tolerance = 0.0;
  std::vector<PlateauCheck> plateaus;

  double max_error() const;
  bool passed() const;
  std::string to_string() const;
};

// Averages the simulated profile over the central `core_fraction` of each
// star-region plateau (left of and right of the contact) and compares with
// the exact star states; temperature is theta = 2 p / rho on both sides.
PlateauReport compare_plateaus(std::span<const SnapshotRow> axial_profile, const RiemannSolution& solution,
                               const ShockTubeSetup& setup, double time, double tolerance, double core_fraction = 0.6);

std::vector<SnapshotRow> sample_nodes(const Lattice& lattice, const SimulationConfig& config);
std::vector<SnapshotRow> axis_profile(const Lattice& lattice, const SimulationConfig& config);
std::vector<SnapshotRow> oracle_rows(std::span<const SnapshotRow> nodes, const RiemannSolution& solution,
                                     const ShockTubeSetup& setup, double time);

struct ShockTubeRun {
  SimulationConfig config;
  long steps = 0;
  ShockTubeSetup setup;
  RiemannSolution solution;
  std::vector<SnapshotRow> final_axis;
  std::string snapshots_csv;
  std::string oracle_csv;
  PlateauReport report;
};

ShockTubeRun run_shock_tube(const SimulationConfig& config);

}  // namespace hlbm

#endif  // HLBM_SHOCK_TUBE_HPP_
