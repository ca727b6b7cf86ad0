#ifndef HLBM_MOMENT_CONDITIONS_HPP_
#define HLBM_MOMENT_CONDITIONS_HPP_

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace hlbm {

inline constexpr int kMaxDim = 4;

// Exponent vector (a_1, ..., a_D) of the monomial v_1^a_1 ... v_D^a_D.
class MultiIndex {
public:
  MultiIndex() = default;
  explicit MultiIndex(std::vector<int> exponents);
  MultiIndex(std::initializer_list<int> exponents);

  int dim() const { return static_cast<int>(exponents_.size()); }
  int order() const;
  int operator[](int axis) const { return exponents_[axis]; }
  std::span<const int> exponents() const { return exponents_; }

  bool all_even() const;
  // Sorted non-increasing; the canonical member of the permutation class.
  bool is_canonical() const;

  std::string to_string() const;

  friend bool operator==(const MultiIndex&, const MultiIndex&) = default;
  friend auto operator<=>(const MultiIndex&, const MultiIndex&) = default;

private:
  std::vector<int> exponents_;
};

// Number of partitions of q into at most dim positive parts; 1 for q == 0.
std::uint64_t partition_count(int q, int dim);

// n!! with the convention (-1)!! = 0!! = 1.
double double_factorial(int n);

// Integral of v^a exp(-|v|^2) over R^D. Zero unless every exponent is even.
double raw_gaussian_moment(const MultiIndex& a);

// raw_gaussian_moment(a) / pi^(D/2), i.e. the moment of the unit-mass
// Gaussian exp(-|v|^2) / pi^(D/2).
double normalized_gaussian_moment(const MultiIndex& a);

struct MomentCondition {
  MultiIndex representative;
  double rhs = 0.0;
};

// Independent even-moment conditions for dimension D up to moment order m,
// i.e. all orders n = 0, 2, ..., 2m.
struct ConditionSet {
  int dim = 0;
  int max_order = 0;
  std::vector<MomentCondition> conditions;

  std::size_t size() const { return conditions.size(); }
  int max_moment_degree() const { return 2 * max_order; }
};

// Ordered by ascending total degree, then lexicographically descending.
ConditionSet generate_conditions(int dim, int max_order);

// One line per condition: `a_1 ... a_D : rhs`, rhs with 17 significant digits.
std::string format_conditions(const ConditionSet& set);
ConditionSet parse_conditions(std::string_view text);

}  // namespace hlbm

#endif  // HLBM_MOMENT_CONDITIONS_HPP_
