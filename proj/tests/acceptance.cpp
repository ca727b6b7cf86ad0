// Acceptance gate: one PASS/FAIL line per criterion; exit status is the
// number of failures.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "hlbm/builtin_models.hpp"
#include "hlbm/equilibrium.hpp"
#include "hlbm/lattice.hpp"
#include "hlbm/moment_conditions.hpp"
#include "hlbm/riemann.hpp"
#include "hlbm/shock_tube.hpp"
#include "hlbm/stencil.hpp"
#include "oracles.hpp"
#include "riemann_oracle.hpp"

using namespace hlbm;

namespace {

// Tolerances and time budgets.
constexpr double kTableTolerance = 5e-5;
constexpr double kRederiveTolerance = 1e-4;
constexpr double kMomentTolerance = 1e-12;
constexpr double kCollisionTolerance = 1e-13;
constexpr double kPeriodicTolerance = 1e-12;
constexpr long kPeriodicSteps = 1000;
constexpr double kPlateauTolerance = 0.015;
constexpr double kWaveMarginCells = 50.0;
constexpr double kHomogeneityTolerance = 1e-10;
constexpr double kHugoniotTolerance = 1e-10;
constexpr double kRootTolerance = 1e-12;
constexpr int kRandomPairs = 1000;

struct PublishedGroup {
  std::vector<int> representative;
  int count;
  double weight;
};

struct PublishedTable {
  int dim;
  double c;
  int total;
  std::vector<PublishedGroup> groups;
};

const PublishedTable kTable2d{2, 0.819381, 33,
                              {{{0, 0}, 1, 0.161987},
                               {{1, 0}, 4, 0.143204},
                               {{1, 1}, 4, 0.0338840},
                               {{2, 0}, 4, 0.00556112},
                               {{2, 2}, 4, 8.44799e-5},
                               {{3, 0}, 4, 0.00113254},
                               {{2, 1}, 8, 0.0128169},
                               {{4, 4}, 4, 3.45552e-6}}};

const PublishedTable kTable3d{3, 0.421803, 95,
                              {{{0, 0, 0}, 1, 0.206847},
                               {{2, 0, 0}, 6, 0.00442257},
                               {{2, 2, 0}, 12, 0.0333341},
                               {{2, 2, 2}, 8, 0.0128902},
                               {{3, 0, 0}, 6, 0.0287920},
                               {{3, 3, 0}, 12, 0.00264319},
                               {{3, 3, 3}, 8, 0.000927908},
                               {{2, 2, 5}, 24, 0.00106078},
                               {{4, 4, 0}, 12, 0.000804376},
                               {{5, 0, 0}, 6, 0.00274697}}};

struct Outcome {
  bool passed = false;
  std::string detail;
};

int failures = 0;

void criterion(int number, const std::string& name, double budget_seconds, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome result;
  try {
    result = body();
  } catch (const std::exception& e) {
    result = {false, fmt::format("exception: {}", e.what())};
  }
  const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const bool in_time = elapsed <= budget_seconds;
  const bool ok = result.passed && in_time;
  if (!ok) ++failures;
  fmt::print("criterion {}: {}: {} ({}; {:.2f} s of {:.0f} s{})\n", number, name, ok ? "PASS" : "FAIL", result.detail, elapsed,
             budget_seconds, in_time ? "" : ", over budget");
  std::fflush(stdout);
}

std::vector<Direction> representatives(const PublishedTable& t) {
  std::vector<Direction> out;
  for (const auto& g : t.groups) out.push_back(g.representative);
  return out;
}

Outcome equation_counts() {
  const auto d2 = generate_conditions(2, 4).size();
  const auto d3 = generate_conditions(3, 4).size();
  return {d2 == 9 && d3 == 11, fmt::format("D=2: {} conditions, D=3: {} conditions", d2, d3)};
}

Outcome table_verification() {
  bool ok = true;
  std::string detail;
  for (const auto& model : {published_d2q33(), published_d3q95()}) {
    const auto report = verify_model(model, 4, kTableTolerance);
    double worst = 0.0;
    for (const auto& c : report.checks) worst = std::max(worst, std::abs(c.residual));
    ok = ok && report.passed();
    detail += fmt::format("{} max |residual| {:.2e}; ", model.name(), worst);
  }
  const auto d2 = published_d2q33();
  std::vector<double> w(d2.weights().begin(), d2.weights().end());
  const double spot = oracle::discrete_moment(d2, w, {2, 0});
  ok = ok && std::abs(spot - 0.5) <= kTableTolerance;
  detail += fmt::format("(2,0) sum {:.8f}", spot);
  return {ok, detail};
}

Outcome rederivation() {
  bool ok = true;
  std::string detail;
  const std::pair<const PublishedTable*, ScaleSearch> cases[] = {{&kTable2d, {0.5, 1.2}}, {&kTable3d, {0.2, 0.8}}};
  for (const auto& [table, search] : cases) {
    const auto model = solve_model(representatives(*table), generate_conditions(table->dim, 4), search);
    const double dc = std::abs(model.scale() - table->c);
    double dw = 0.0;
    for (std::size_t g = 0; g < table->groups.size(); ++g) dw = std::max(dw, std::abs(model.groups()[g].weight - table->groups[g].weight));
    ok = ok && dc <= kRederiveTolerance && dw <= kRederiveTolerance;
    detail += fmt::format("D{}: c = {:.6f} (|dc| {:.1e}), max |dw| {:.1e}; ", table->dim, model.scale(), dc, dw);
  }
  detail.resize(detail.size() - 2);
  return {ok, detail};
}

Outcome multiplicities() {
  bool ok = true;
  std::string detail;
  for (const auto* table : {&kTable2d, &kTable3d}) {
    int total = 0;
    for (const auto& g : table->groups) {
      const int n = static_cast<int>(expand_orbit(g.representative).size());
      ok = ok && n == g.count && static_cast<int>(orbit_size(g.representative)) == n;
      total += n;
    }
    const auto model = table->dim == 2 ? published_d2q33() : published_d3q95();
    for (std::size_t g = 0; g < table->groups.size(); ++g) ok = ok && model.groups()[g].multiplicity == table->groups[g].count;
    ok = ok && total == table->total && model.size() == table->total;
    detail += fmt::format("D{}: {} velocities; ", table->dim, total);
  }
  detail.resize(detail.size() - 2);
  return {ok, detail};
}

Outcome moment_matching() {
  constexpr int kStates = 120;
  double worst = 0.0;
  for (const auto& model : {refined_d2q33(), refined_d3q95()}) {
    const auto indices = oracle::indices_up_to(model.dim(), 4);
    for (const auto& s : oracle::random_states(model.dim(), kStates, 1234u)) {
      const auto f = discrete_equilibrium(model, s);
      for (const auto& a : indices) {
        const double target = target_moment(a, s);
        const double independent = oracle::maxwell_moment(a, s);
        const double scale = std::max(1.0, std::abs(independent));
        worst = std::max({worst, std::abs(oracle::discrete_moment(model, f, a) - independent) / scale,
                          std::abs(target - independent) / scale});
      }
    }
  }
  return {worst <= kMomentTolerance, fmt::format("{} states per model, max relative error {:.2e}", kStates, worst)};
}

Outcome conservation() {
  double collision_worst = 0.0;
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> noise(-0.05, 0.05);
  for (const auto& model : {refined_d2q33(), refined_d3q95()}) {
    for (const auto& s : oracle::random_states(model.dim(), 100, 99u)) {
      auto f = discrete_equilibrium(model, s);
      for (double& x : f) x *= 1.0 + noise(rng);
      const auto post = collide(f, macro_fields(f, model), 1.5, model);
      Totals before, after;
      for (int i = 0; i < model.size(); ++i) {
        double v2 = 0.0;
        for (int a = 0; a < model.dim(); ++a) {
          const double v = model.velocity(i, a);
          before.momentum[a] += v * f[i];
          after.momentum[a] += v * post[i];
          v2 += v * v;
        }
        before.mass += f[i];
        after.mass += post[i];
        before.energy += v2 * f[i];
        after.energy += v2 * post[i];
      }
      collision_worst = std::max({collision_worst, std::abs(after.mass - before.mass) / before.mass,
                                  std::abs(after.energy - before.energy) / before.energy});
      for (int a = 0; a < model.dim(); ++a) {
        // momentum may vanish; scale by rho * c
        collision_worst = std::max(collision_worst, std::abs(after.momentum[a] - before.momentum[a]) /
                                                        std::max(std::abs(before.momentum[a]), before.mass * model.scale()));
      }
    }
  }

  const auto model = refined_d3q95();
  GridSpec grid;
  grid.dims = {4, 4, 16};
  grid.boundaries.assign(3, AxisBoundary{});
  Lattice lattice(model, grid, 1.5);
  const auto states = oracle::random_states(3, static_cast<int>(grid.node_count()), 5u, 0.2, 0.9, 1.1);
  lattice.initialize([&](std::span<const int> x) { return states[lattice.node_index(x)]; });
  const auto start = lattice.totals();
  double run_worst = 0.0;
  lattice.run(kPeriodicSteps, [&](const Lattice& l) {
    const auto t = l.totals();
    run_worst = std::max({run_worst, std::abs(t.mass - start.mass) / start.mass, std::abs(t.energy - start.energy) / start.energy});
    for (int a = 0; a < 3; ++a) {
      run_worst = std::max(run_worst, std::abs(t.momentum[a] - start.momentum[a]) /
                                          std::max(std::abs(start.momentum[a]), start.mass * model.scale()));
    }
  });
  return {collision_worst <= kCollisionTolerance && run_worst <= kPeriodicTolerance,
          fmt::format("collision max relative change {:.2e}; periodic 4x4x16 run, {} steps, max relative drift {:.2e}",
                      collision_worst, kPeriodicSteps, run_worst)};
}

// Plateau averages recomputed from the axial profile against an independent
// bisection-based star state.
double independent_plateau_error(const ShockTubeRun& run) {
  const double gamma = run.setup.gamma;
  const auto& l = run.setup.left;
  const auto& r = run.setup.right;
  const double p = oracle::bisect_star_pressure(l, r, gamma);
  const double u = 0.5 * (l.velocity + r.velocity) + 0.5 * (oracle::wave_function(p, r, gamma) - oracle::wave_function(p, l, gamma));
  // left rarefaction, right shock for this tube
  const double rho_l = l.rho * std::pow(p / l.pressure, 1.0 / gamma);
  const double ratio = p / r.pressure, g = (gamma - 1.0) / (gamma + 1.0);
  const double rho_r = r.rho * (ratio + g) / (g * ratio + 1.0);
  const double tail = u - std::sqrt(gamma * p / rho_l);
  const double shock = r.velocity + std::sqrt(gamma * r.pressure / r.rho) * std::sqrt((gamma + 1.0) / (2.0 * gamma) * ratio + (gamma - 1.0) / (2.0 * gamma));
  const double t = static_cast<double>(run.steps);
  const double x0 = run.setup.diaphragm;

  auto window_error = [&](double lo, double hi, double rho_exact) {
    const double w = hi - lo;
    const double a = x0 + (lo + 0.2 * w) * t, b = x0 + (hi - 0.2 * w) * t;
    double rho = 0.0, theta = 0.0;
    int n = 0;
    for (const auto& row : run.final_axis) {
      if (row.z_phys < a || row.z_phys > b) continue;
      rho += row.rho;
      theta += row.theta;
      ++n;
    }
    if (n == 0) return std::numeric_limits<double>::infinity();
    const double theta_exact = 2.0 * p / rho_exact;
    return std::max(std::abs(rho / n - rho_exact) / rho_exact, std::abs(theta / n - theta_exact) / theta_exact);
  };
  return std::max(window_error(tail, u, rho_l), window_error(u, shock, rho_r));
}

Outcome shock_tube() {
  auto config = parse_simulation_config("");  // 2x2x800, D3Q95, omega 1.5, automatic steps
  config.plateau_tolerance = kPlateauTolerance;
  const auto run = run_shock_tube(config);
  const double t = static_cast<double>(run.steps);
  const double spacing = run.setup.spacing;
  const double left_front = (run.setup.diaphragm + run.solution.left_head * t) / spacing;
  const double right_front = (run.setup.diaphragm + run.solution.right_head * t) / spacing;
  const double margin = std::min(left_front, run.setup.length - 1 - right_front);
  const double independent = independent_plateau_error(run);

  auto full = config;
  full.dims = {11, 11, 800};
  full.steps = run.steps;
  const auto wide = run_shock_tube(full);
  double spread = 0.0;
  for (std::size_t k = 0; k < run.final_axis.size(); ++k) {
    spread = std::max({spread, std::abs(run.final_axis[k].rho - wide.final_axis[k].rho),
                       std::abs(run.final_axis[k].theta - wide.final_axis[k].theta)});
  }

  const bool ok = run.report.passed() && independent <= kPlateauTolerance && margin >= kWaveMarginCells &&
                  wide.report.passed() && spread <= kHomogeneityTolerance;
  return {ok, fmt::format("{} steps, wave margin {:.1f} cells, plateau error {:.2e} (independent {:.2e}), 11x11 vs 2x2 axis |diff| {:.1e}",
                          run.steps, margin, run.report.max_error(), independent, spread)};
}

Outcome riemann_oracle() {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> rho(0.05, 20.0), u(-3.0, 3.0), p(0.05, 20.0);
  const double gammas[] = {5.0 / 3.0, 2.0, 1.4};
  int solved = 0, shocks = 0;
  double hugoniot = 0.0, library_hugoniot = 0.0, root = 0.0;
  while (solved < kRandomPairs) {
    const PrimitiveState l{rho(rng), u(rng), p(rng)}, r{rho(rng), u(rng), p(rng)};
    const double gamma = gammas[solved % 3];
    // skip pairs that generate vacuum
    const double a_l = l.sound_speed(gamma), a_r = r.sound_speed(gamma);
    if (2.0 * (a_l + a_r) / (gamma - 1.0) <= r.velocity - l.velocity) continue;
    const auto sol = solve_riemann(l, r, gamma);
    ++solved;
    const double reference = oracle::bisect_star_pressure(l, r, gamma);
    root = std::max(root, std::abs(sol.p_star - reference) / reference);
    if (sol.left_wave == WaveKind::shock) {
      ++shocks;
      hugoniot = std::max(hugoniot, oracle::flux_imbalance(l, sol.star_left(), sol.left_head, gamma));
      library_hugoniot = std::max(library_hugoniot, rankine_hugoniot_residual(l, sol.star_left(), sol.left_head, gamma));
    }
    if (sol.right_wave == WaveKind::shock) {
      ++shocks;
      hugoniot = std::max(hugoniot, oracle::flux_imbalance(r, sol.star_right(), sol.right_head, gamma));
      library_hugoniot = std::max(library_hugoniot, rankine_hugoniot_residual(r, sol.star_right(), sol.right_head, gamma));
    }
  }
  const bool ok = root <= kRootTolerance && hugoniot <= kHugoniotTolerance && library_hugoniot <= kHugoniotTolerance;
  return {ok, fmt::format("{} pairs, {} shocks, max flux imbalance {:.2e}, max |p* - bisection| / p* {:.2e}", solved, shocks,
                          std::max(hugoniot, library_hugoniot), root)};
}

}  // namespace

int main() {
  criterion(1, "equation counts", 1.0, equation_counts);
  criterion(2, "published table verification", 1.0, table_verification);
  criterion(3, "model re-derivation", 30.0, rederivation);
  criterion(4, "orbit multiplicities", 1.0, multiplicities);
  criterion(5, "equilibrium moment matching", 10.0, moment_matching);
  criterion(6, "conservation", 60.0, conservation);
  criterion(7, "shock tube plateaus vs exact Riemann solution", 300.0, shock_tube);
  criterion(8, "Riemann oracle self-consistency", 10.0, riemann_oracle);
  fmt::print("{} of 8 criteria passed\n", 8 - failures);
  return failures;
}
