#include "hlbm/stencil.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <set>
#include <tuple>

#include <Eigen/Dense>
#include <fmt/format.h>

namespace hlbm {

std::vector<Direction> expand_orbit(std::span<const int> representative) {
  if (representative.empty()) throw std::invalid_argument("expand_orbit: empty representative");
  Direction magnitudes(representative.begin(), representative.end());
  for (int& m : magnitudes) m = std::abs(m);
  std::sort(magnitudes.begin(), magnitudes.end());

  std::vector<Direction> orbit;
  do {
    std::vector<int> nonzero_axes;
    for (std::size_t k = 0; k < magnitudes.size(); ++k) {
      if (magnitudes[k] != 0) nonzero_axes.push_back(static_cast<int>(k));
    }
    const unsigned flips = 1u << nonzero_axes.size();
    for (unsigned mask = 0; mask < flips; ++mask) {
      Direction e = magnitudes;
      for (std::size_t b = 0; b < nonzero_axes.size(); ++b) {
        if (mask & (1u << b)) e[nonzero_axes[b]] = -e[nonzero_axes[b]];
      }
      orbit.push_back(std::move(e));
    }
  } while (std::next_permutation(magnitudes.begin(), magnitudes.end()));

  std::sort(orbit.begin(), orbit.end());
  return orbit;
}

std::size_t orbit_size(std::span<const int> representative) {
  std::map<int, int> repetitions;
  std::size_t nonzero = 0;
  for (int a : representative) {
    ++repetitions[std::abs(a)];
    if (a != 0) ++nonzero;
  }
  auto factorial = [](std::size_t n) {
    std::size_t f = 1;
    for (std::size_t k = 2; k <= n; ++k) f *= k;
    return f;
  };
  std::size_t size = factorial(representative.size()) << nonzero;
  for (const auto& [value, count] : repetitions) size /= factorial(static_cast<std::size_t>(count));
  return size;
}

VelocityModel::VelocityModel(std::string name, int dim, double scale, std::vector<VelocityGroup> groups)
    : name_(std::move(name)), dim_(dim), scale_(scale), groups_(std::move(groups)) {
  if (dim_ < 1 || dim_ > kMaxDim) throw std::invalid_argument(fmt::format("VelocityModel: dimension {} unsupported", dim_));
  if (!(scale_ > 0.0) || !std::isfinite(scale_)) throw std::invalid_argument("VelocityModel: scale c must be positive");

  std::set<Direction> seen;
  for (std::size_t g = 0; g < groups_.size(); ++g) {
    auto& group = groups_[g];
    if (static_cast<int>(group.representative.size()) != dim_) {
      throw std::invalid_argument(fmt::format("VelocityModel: group {} has wrong dimension", g + 1));
    }
    if (std::any_of(group.representative.begin(), group.representative.end(), [](int a) { return a < 0; })) {
      throw std::invalid_argument(fmt::format("VelocityModel: group {} representative has a negative component", g + 1));
    }
    auto orbit = expand_orbit(group.representative);
    if (group.multiplicity != 0 && group.multiplicity != static_cast<int>(orbit.size())) {
      throw std::invalid_argument(fmt::format("VelocityModel: group {} multiplicity {} but orbit size {}", g + 1,
                                              group.multiplicity, orbit.size()));
    }
    group.multiplicity = static_cast<int>(orbit.size());
    for (auto& e : orbit) {
      if (!seen.insert(e).second) {
        throw std::invalid_argument(fmt::format("VelocityModel: velocity ({}) appears in more than one group", fmt::join(e, ",")));
      }
      directions_.insert(directions_.end(), e.begin(), e.end());
      weights_.push_back(group.weight);
      group_index_.push_back(static_cast<int>(g));
    }
  }
  if (name_.empty()) name_ = fmt::format("D{}Q{}", dim_, size());
}

bool VelocityModel::has_negative_weights() const {
  return std::any_of(groups_.begin(), groups_.end(), [](const VelocityGroup& g) { return g.weight < 0.0; });
}

double VelocityModel::weight_sum() const {
  double sum = 0.0;
  for (const auto& g : groups_) sum += g.multiplicity * g.weight;
  return sum;
}

namespace {

double monomial(std::span<const int> direction, double scale, std::span<const int> exponents) {
  double value = 1.0;
  for (std::size_t k = 0; k < direction.size(); ++k) value *= std::pow(scale * direction[k], exponents[k]);
  return value;
}

}  // namespace

double condition_residual(const VelocityModel& model, const MomentCondition& cond) {
  const auto& a = cond.representative;
  if (a.dim() != model.dim()) {
    throw std::invalid_argument(fmt::format("condition_residual: condition dimension {} vs model dimension {}", a.dim(), model.dim()));
  }
  // Odd exponents cancel pairwise over each sign-symmetric orbit.
  if (!a.all_even()) return 0.0 - cond.rhs;
  double sum = 0.0;
  for (int i = 0; i < model.size(); ++i) sum += model.weight(i) * monomial(model.direction(i), model.scale(), a.exponents());
  return sum - cond.rhs;
}

bool VerificationReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const ConditionCheck& c) { return c.pass; });
}

std::string VerificationReport::to_string() const {
  std::string out = fmt::format("model {} order {} tolerance {:.3g}\n", model_name, max_order, tolerance);
  for (const auto& check : checks) {
    out += fmt::format("{:<14} rhs {:<22.17g} residual {:+.6e} {}\n", check.condition.representative.to_string(),
                       check.condition.rhs, check.residual, check.pass ? "ok" : "FAIL");
  }
  out += fmt::format("max |residual| {:.6e}\n", max_abs_residual);
  if (has_negative_weights) out += "warning: negative weights\n";
  out += passed() ? "PASS\n" : "FAIL\n";
  return out;
}

VerificationReport verify_model(const VelocityModel& model, int max_order, double tolerance) {
  VerificationReport report;
  report.model_name = model.name();
  report.max_order = max_order;
  report.tolerance = tolerance;
  report.has_negative_weights = model.has_negative_weights();
  for (auto& cond : generate_conditions(model.dim(), max_order).conditions) {
    double residual = condition_residual(model, cond);
    report.max_abs_residual = std::max(report.max_abs_residual, std::abs(residual));
    report.checks.push_back({std::move(cond), residual, std::abs(residual) <= tolerance});
  }
  return report;
}

std::vector<double> moment_matrix(std::span<const Direction> directions, double scale, const ConditionSet& conditions) {
  const std::size_t rows = conditions.size();
  std::vector<double> matrix(rows * directions.size(), 0.0);  // column-major
  for (std::size_t j = 0; j < directions.size(); ++j) {
    if (static_cast<int>(directions[j].size()) != conditions.dim) {
      throw std::invalid_argument(fmt::format("moment_matrix: direction {} has wrong dimension", j + 1));
    }
    for (const auto& e : expand_orbit(directions[j])) {
      for (std::size_t r = 0; r < rows; ++r) {
        matrix[j * rows + r] += monomial(e, scale, conditions.conditions[r].representative.exponents());
      }
    }
  }
  return matrix;
}

WeightSolution solve_weights(std::span<const Direction> directions, double scale, const ConditionSet& conditions) {
  if (!(scale > 0.0)) throw std::invalid_argument("solve_weights: c must be positive");
  if (directions.empty()) throw std::invalid_argument("solve_weights: no directions");
  {
    std::set<Direction> orbits;
    for (const auto& d : directions) {
      if (!orbits.insert(expand_orbit(d).front()).second) {
        throw std::invalid_argument(fmt::format("solve_weights: direction ({}) repeats an orbit", fmt::join(d, ",")));
      }
    }
  }
  const auto rows = static_cast<Eigen::Index>(conditions.size());
  const auto cols = static_cast<Eigen::Index>(directions.size());
  auto data = moment_matrix(directions, scale, conditions);
  Eigen::Map<const Eigen::MatrixXd> A(data.data(), rows, cols);
  Eigen::VectorXd b(rows);
  for (Eigen::Index r = 0; r < rows; ++r) b[r] = conditions.conditions[r].rhs;

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(A);
  qr.setThreshold(1e-13);
  WeightSolution solution;
  solution.rank = static_cast<int>(qr.rank());
  if (qr.rank() < cols) {
    throw SolveError(fmt::format("solve_weights: moment matrix rank {} < {} unknowns at c = {:.17g}", qr.rank(), cols, scale));
  }
  Eigen::VectorXd w = qr.solve(b);
  solution.residual_norm = (A * w - b).norm();
  solution.weights.assign(w.data(), w.data() + w.size());
  solution.has_negative = (w.array() < 0.0).any();
  return solution;
}

namespace {

double residual_or_inf(std::span<const Direction> directions, double c, const ConditionSet& conditions) {
  try {
    return solve_weights(directions, c, conditions).residual_norm;
  } catch (const SolveError&) {
    return std::numeric_limits<double>::infinity();
  }
}

// Newton iterations on the square system A(c) w = b in the unknowns (c, w);
// d/dc of a moment of total degree n is n/c times the moment.
std::pair<double, double> polish(std::span<const Direction> directions, const ConditionSet& conditions, double c,
                                 double residual) {
  const auto rows = static_cast<Eigen::Index>(conditions.size());
  const auto cols = static_cast<Eigen::Index>(directions.size());
  Eigen::VectorXd b(rows), degree(rows);
  for (Eigen::Index r = 0; r < rows; ++r) {
    b[r] = conditions.conditions[r].rhs;
    degree[r] = conditions.conditions[r].representative.order();
  }
  for (int it = 0; it < 8; ++it) {
    WeightSolution current;
    try {
      current = solve_weights(directions, c, conditions);
    } catch (const SolveError&) {
      break;
    }
    auto data = moment_matrix(directions, c, conditions);
    Eigen::Map<const Eigen::MatrixXd> A(data.data(), rows, cols);
    Eigen::Map<const Eigen::VectorXd> w(current.weights.data(), cols);
    Eigen::MatrixXd jacobian(rows, cols + 1);
    jacobian.col(0) = degree.cwiseProduct(A * w) / c;
    jacobian.rightCols(cols) = A;
    Eigen::VectorXd delta = jacobian.colPivHouseholderQr().solve(A * w - b);
    const double next_c = c - delta[0];
    if (!(next_c > 0.0)) break;
    const double next_r = residual_or_inf(directions, next_c, conditions);
    if (!(next_r < residual)) break;
    c = next_c;
    residual = next_r;
  }
  return {c, residual};
}

}  // namespace

ModelSolution solve_scale_and_weights(std::span<const Direction> directions, const ConditionSet& conditions,
                                      const ScaleSearch& search) {
  if (directions.size() + 1 != conditions.size()) {
    throw std::invalid_argument(fmt::format("solve_model: {} unknowns (groups + c) for {} conditions",
                                            directions.size() + 1, conditions.size()));
  }
  if (!(search.c_min > 0.0) || !(search.c_max > search.c_min) || search.grid_points < 3) {
    throw std::invalid_argument("solve_model: need 0 < c_min < c_max and at least 3 grid points");
  }

  const int n = search.grid_points;
  const double h = (search.c_max - search.c_min) / (n - 1);
  std::vector<double> residuals(n);
#pragma omp parallel for schedule(static)
  for (int k = 0; k < n; ++k) residuals[k] = residual_or_inf(directions, search.c_min + k * h, conditions);

  const auto best = static_cast<int>(std::min_element(residuals.begin(), residuals.end()) - residuals.begin());
  if (!std::isfinite(residuals[best])) throw SolveError("solve_model: moment matrix rank deficient over the whole interval");

  // Golden-section search on the residual norm inside the neighbouring grid cells.
  double lo = search.c_min + std::max(best - 1, 0) * h;
  double hi = search.c_min + std::min(best + 1, n - 1) * h;
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = residual_or_inf(directions, x1, conditions);
  double f2 = residual_or_inf(directions, x2, conditions);
  double best_c = search.c_min + best * h;
  double best_r = residuals[best];
  while (hi - lo > search.bracket_tolerance) {
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = residual_or_inf(directions, x1, conditions);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = residual_or_inf(directions, x2, conditions);
    }
    for (auto [x, f] : {std::pair{x1, f1}, std::pair{x2, f2}}) {
      if (f < best_r) {
        best_r = f;
        best_c = x;
      }
    }
  }

  std::tie(best_c, best_r) = polish(directions, conditions, best_c, best_r);

  if (!(best_r <= search.residual_tolerance)) {
    throw SolveError(fmt::format("solve_model: no residual minimum below {:.3g} in [{}, {}]; best c = {:.17g} residual {:.6e}",
                                 search.residual_tolerance, search.c_min, search.c_max, best_c, best_r));
  }
  return {best_c, solve_weights(directions, best_c, conditions)};
}

VelocityModel solve_model(std::span<const Direction> directions, const ConditionSet& conditions,
                          const ScaleSearch& search, std::string name) {
  auto solution = solve_scale_and_weights(directions, conditions, search);
  std::vector<VelocityGroup> groups;
  for (std::size_t j = 0; j < directions.size(); ++j) groups.push_back({directions[j], solution.weights.weights[j], 0});
  return VelocityModel(std::move(name), conditions.dim, solution.scale, std::move(groups));
}

}  // namespace hlbm
