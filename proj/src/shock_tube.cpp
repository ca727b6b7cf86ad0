#include "hlbm/shock_tube.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "hlbm/model_io.hpp"

namespace hlbm {

PrimitiveState primitive_from(const MacroState& state, int axis) {
  return {state.rho, state.u[axis], 0.5 * state.rho * state.theta};
}

ShockTubeSetup shock_tube_setup(const SimulationConfig& config, double spacing) {
  ShockTubeSetup setup;
  setup.left = primitive_from(config.left, config.axis);
  setup.right = primitive_from(config.right, config.axis);
  setup.gamma = kinetic_gamma(config.dim());
  setup.spacing = spacing;
  setup.axis = config.axis;
  setup.length = config.dims[config.axis];
  setup.diaphragm = (config.split - 0.5) * spacing;
  return setup;
}

long automatic_steps(const RiemannSolution& solution, const ShockTubeSetup& setup, double margin_cells) {
  const double low_limit = margin_cells * setup.spacing;
  const double high_limit = (setup.length - 1 - margin_cells) * setup.spacing;
  double t_max = INFINITY;
  const double leftmost = std::min(solution.left_head, solution.right_head);
  const double rightmost = std::max(solution.left_head, solution.right_head);
  if (leftmost < 0.0) t_max = std::min(t_max, (setup.diaphragm - low_limit) / -leftmost);
  if (rightmost > 0.0) t_max = std::min(t_max, (high_limit - setup.diaphragm) / rightmost);
  if (!std::isfinite(t_max) || t_max < 1.0) {
    throw ConfigError(fmt::format("tube too short: waves reach the {}-cell margin before the first step", margin_cells));
  }
  return static_cast<long>(std::floor(t_max));
}

double PlateauCheck::rho_error() const { return std::abs(rho_sim - rho_exact) / rho_exact; }
double PlateauCheck::theta_error() const { return std::abs(theta_sim - theta_exact) / theta_exact; }

double PlateauReport::max_error() const {
  double worst = 0.0;
  for (const auto& p : plateaus) worst = std::max({worst, p.rho_error(), p.theta_error()});
  return worst;
}

bool PlateauReport::passed() const {
  return !plateaus.empty() && std::all_of(plateaus.begin(), plateaus.end(), [&](const PlateauCheck& p) {
    return p.cells > 0 && p.rho_error() <= tolerance && p.theta_error() <= tolerance;
  });
}

std::string PlateauReport::to_string() const {
  std::string out = fmt::format("plateau comparison at t = {} (tolerance {:.3g} relative)\n", time, tolerance);
  for (const auto& p : plateaus) {
    out += fmt::format("{:<11} z in [{:.4f}, {:.4f}] cells {:>3}  rho sim {:.6f} exact {:.6f} err {:.3e}  "
                       "theta sim {:.6f} exact {:.6f} err {:.3e}\n",
                       p.name, p.z_begin, p.z_end, p.cells, p.rho_sim, p.rho_exact, p.rho_error(), p.theta_sim,
                       p.theta_exact, p.theta_error());
  }
  out += fmt::format("max relative error {:.3e}\n", max_error());
  out += passed() ? "PASS\n" : "FAIL\n";
  return out;
}

PlateauReport compare_plateaus(std::span<const SnapshotRow> axial_profile, const RiemannSolution& solution,
                               const ShockTubeSetup& setup, double time, double tolerance, double core_fraction) {
  PlateauReport report;
  report.time = time;
  report.tolerance = tolerance;
  struct Window {
    const char* name;
    double xi_begin, xi_end;
    PrimitiveState exact;
  };
  const Window windows[] = {
      {"star-left", solution.left_tail, solution.u_star, solution.star_left()},
      {"star-right", solution.u_star, solution.right_tail, solution.star_right()},
  };
  for (const auto& w : windows) {
    const double begin = setup.diaphragm + w.xi_begin * time;
    const double end = setup.diaphragm + w.xi_end * time;
    const double trim = 0.5 * (1.0 - core_fraction) * (end - begin);
    PlateauCheck check;
    check.name = w.name;
    check.z_begin = begin + trim;
    check.z_end = end - trim;
    check.rho_exact = w.exact.rho;
    check.theta_exact = w.exact.theta();
    for (const auto& row : axial_profile) {
      if (row.z_phys >= check.z_begin && row.z_phys <= check.z_end) {
        check.rho_sim += row.rho;
        check.theta_sim += row.theta;
        ++check.cells;
      }
    }
    if (check.cells > 0) {
      check.rho_sim /= check.cells;
      check.theta_sim /= check.cells;
    }
    report.plateaus.push_back(check);
  }
  return report;
}

namespace {

SnapshotRow row_at(const Lattice& lattice, const SimulationConfig& config, std::size_t node) {
  const auto coords = lattice.node_coords(node);
  const auto state = lattice.macro_at(node);
  SnapshotRow row;
  row.time = static_cast<double>(lattice.steps_taken());
  for (int axis = 0; axis < std::min(lattice.grid().dim(), 3); ++axis) {
    row.index[axis] = coords[axis];
    row.u[axis] = state.u[axis];
  }
  row.z_phys = coords[config.axis] * lattice.model().scale();
  row.rho = state.rho;
  row.theta = state.theta;
  return row;
}

}  // namespace

std::vector<SnapshotRow> sample_nodes(const Lattice& lattice, const SimulationConfig& config) {
  if (config.output_nodes == OutputNodes::axis) return axis_profile(lattice, config);
  std::vector<SnapshotRow> rows;
  for (std::size_t n = 0; n < lattice.populations().nodes(); ++n) rows.push_back(row_at(lattice, config, n));
  return rows;
}

std::vector<SnapshotRow> axis_profile(const Lattice& lattice, const SimulationConfig& config) {
  std::vector<int> coords(config.dim());
  for (int axis = 0; axis < config.dim(); ++axis) coords[axis] = config.dims[axis] / 2;
  std::vector<SnapshotRow> rows;
  for (int k = 0; k < config.dims[config.axis]; ++k) {
    coords[config.axis] = k;
    rows.push_back(row_at(lattice, config, lattice.node_index(coords)));
  }
  return rows;
}

std::vector<SnapshotRow> oracle_rows(std::span<const SnapshotRow> nodes, const RiemannSolution& solution,
                                     const ShockTubeSetup& setup, double time) {
  std::vector<SnapshotRow> rows;
  for (const auto& node : nodes) {
    const auto exact = sample(solution, (node.z_phys - setup.diaphragm) / time);
    SnapshotRow row = node;
    row.time = time;
    row.rho = exact.rho;
    row.u = {};
    if (setup.axis < 3) row.u[setup.axis] = exact.velocity;
    row.theta = exact.theta();
    rows.push_back(row);
  }
  return rows;
}

ShockTubeRun run_shock_tube(const SimulationConfig& config) {
  if (config.dim() > 3) throw ConfigError("shock tube: snapshots support at most three axes");
  ShockTubeRun run;
  run.config = config;
  auto model = load_model(config.model);
  if (model.dim() != config.dim()) {
    throw ConfigError(fmt::format("model {} is {}-dimensional but dims has {} axes", model.name(), model.dim(), config.dim()));
  }
  run.setup = shock_tube_setup(config, model.scale());
  run.solution = solve_riemann(run.setup.left, run.setup.right, run.setup.gamma);
  run.steps = config.steps ? *config.steps : automatic_steps(run.solution, run.setup);
  if (run.steps < 1) throw ConfigError("shock tube: at least one step is required for the comparison");
  run.config.steps = run.steps;

  Lattice lattice(std::move(model), config.grid(), config.omega);
  lattice.initialize([&](std::span<const int> coords) { return config.initial_state(coords); });

  run.snapshots_csv = snapshot_header(TimeColumn::step);
  lattice.run(run.steps, [&](const Lattice& l) {
    if (config.output_every > 0 && l.steps_taken() % config.output_every == 0 && l.steps_taken() != run.steps) {
      run.snapshots_csv += format_snapshot_rows(sample_nodes(l, config), TimeColumn::step);
    }
  });
  const auto final_rows = sample_nodes(lattice, config);
  run.snapshots_csv += format_snapshot_rows(final_rows, TimeColumn::step);
  run.final_axis = axis_profile(lattice, config);

  const auto time = static_cast<double>(run.steps);
  run.oracle_csv = snapshot_header(TimeColumn::t) + format_snapshot_rows(oracle_rows(final_rows, run.solution, run.setup, time), TimeColumn::t);
  run.report = compare_plateaus(run.final_axis, run.solution, run.setup, time, config.plateau_tolerance);
  return run;
}

}  // namespace hlbm
