#ifndef HLBM_STENCIL_HPP_
#define HLBM_STENCIL_HPP_

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "hlbm/moment_conditions.hpp"

namespace hlbm {

// Integer lattice direction; physical velocity is c * direction.
using Direction = std::vector<int>;

// All distinct images of `representative` under sign flips and coordinate
// permutations (the hypercubic group B_D), sorted lexicographically.
std::vector<Direction> expand_orbit(std::span<const int> representative);

// Orbit size from the multiset structure of |components|, without enumeration.
std::size_t orbit_size(std::span<const int> representative);

struct VelocityGroup {
  Direction representative;
  double weight = 0.0;
  int multiplicity = 0;
};

class VelocityModel {
public:
  VelocityModel(std::string name, int dim, double scale, std::vector<VelocityGroup> groups);

  const std::string& name() const { return name_; }
  int dim() const { return dim_; }
  double scale() const { return scale_; }
  const std::vector<VelocityGroup>& groups() const { return groups_; }

  // Expanded velocity set, group by group, each orbit in expand_orbit order.
  int size() const { return static_cast<int>(weights_.size()); }
  std::span<const int> direction(int i) const { return {directions_.data() + static_cast<std::size_t>(i) * dim_, static_cast<std::size_t>(dim_)}; }
  double velocity(int i, int axis) const { return scale_ * directions_[static_cast<std::size_t>(i) * dim_ + axis]; }
  double weight(int i) const { return weights_[i]; }
  int group_of(int i) const { return group_index_[i]; }
  std::span<const double> weights() const { return weights_; }

  bool has_negative_weights() const;
  double weight_sum() const;

private:
  std::string name_;
  int dim_;
  double scale_;
  std::vector<VelocityGroup> groups_;
  std::vector<int> directions_;  // size() x dim_, row-major
  std::vector<double> weights_;
  std::vector<int> group_index_;
};

// Sum_i w_i (c e_i)^a - rhs over the expanded velocity set.
double condition_residual(const VelocityModel& model, const MomentCondition& cond);

// 6 significant digits in the published weights and c.
inline constexpr double kPublishedTableTolerance = 5e-5;

struct ConditionCheck {
  MomentCondition condition;
  double residual = 0.0;
  bool pass = false;
};

struct VerificationReport {
  std::string model_name;
  int max_order = 0;
  double tolerance = 0.0;
  std::vector<ConditionCheck> checks;
  double max_abs_residual = 0.0;
  bool has_negative_weights = false;

  bool passed() const;
  std::string to_string() const;
};

VerificationReport verify_model(const VelocityModel& model, int max_order, double tolerance = kPublishedTableTolerance);

class SolveError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct WeightSolution {
  std::vector<double> weights;  // one per direction (group)
  double residual_norm = 0.0;
  int rank = 0;
  bool has_negative = false;
};

// Column j of the system holds Sum_{e in orbit(dirs[j])} (c e)^a for each condition a.
std::vector<double> moment_matrix(std::span<const Direction> directions, double scale, const ConditionSet& conditions);

// Least-squares weights for fixed c. Throws SolveError when the system is rank deficient.
WeightSolution solve_weights(std::span<const Direction> directions, double scale, const ConditionSet& conditions);

struct ScaleSearch {
  double c_min = 0.0;
  double c_max = 0.0;
  int grid_points = 2000;
  double residual_tolerance = 1e-10;
  double bracket_tolerance = 1e-12;
};

struct ModelSolution {
  double scale = 0.0;
  WeightSolution weights;
};

// Solves the square system (groups + 1 unknowns = conditions) for c and the
// weights: grid scan of the least-squares residual in c, golden-section
// refinement of the best bracket. Throws SolveError on failure or
// std::invalid_argument when the unknown count does not match.
ModelSolution solve_scale_and_weights(std::span<const Direction> directions, const ConditionSet& conditions,
                                      const ScaleSearch& search);

VelocityModel solve_model(std::span<const Direction> directions, const ConditionSet& conditions,
                          const ScaleSearch& search, std::string name = {});

}  // namespace hlbm

#endif  // HLBM_STENCIL_HPP_
