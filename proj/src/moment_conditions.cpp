#include "hlbm/moment_conditions.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include <fmt/format.h>

namespace hlbm {

MultiIndex::MultiIndex(std::vector<int> exponents) : exponents_(std::move(exponents)) {
  if (exponents_.empty() || dim() > kMaxDim) {
    throw std::invalid_argument(fmt::format("MultiIndex: dimension {} outside [1, {}]", dim(), kMaxDim));
  }
  if (std::any_of(exponents_.begin(), exponents_.end(), [](int a) { return a < 0; })) {
    throw std::invalid_argument("MultiIndex: negative exponent");
  }
}

MultiIndex::MultiIndex(std::initializer_list<int> exponents) : MultiIndex(std::vector<int>(exponents)) {}

int MultiIndex::order() const { return std::accumulate(exponents_.begin(), exponents_.end(), 0); }

bool MultiIndex::all_even() const {
  return std::all_of(exponents_.begin(), exponents_.end(), [](int a) { return a % 2 == 0; });
}

bool MultiIndex::is_canonical() const {
  return std::is_sorted(exponents_.begin(), exponents_.end(), std::greater<>{});
}

std::string MultiIndex::to_string() const { return fmt::format("({})", fmt::join(exponents_, ",")); }

std::uint64_t partition_count(int q, int dim) {
  if (q < 0 || dim < 1) {
    throw std::invalid_argument("partition_count: requires q >= 0 and dim >= 1");
  }
  // p(n, k) = partitions of n into parts of size <= k, which by conjugation
  // equals partitions into at most k parts.
  std::vector<std::uint64_t> ways(static_cast<std::size_t>(q) + 1, 0);
  ways[0] = 1;
  for (int part = 1; part <= dim; ++part) {
    for (int n = part; n <= q; ++n) ways[n] += ways[n - part];
  }
  return ways[q];
}

double double_factorial(int n) {
  if (n < -1) throw std::invalid_argument("double_factorial: n < -1");
  double result = 1.0;
  for (int k = n; k > 1; k -= 2) result *= k;
  return result;
}

double normalized_gaussian_moment(const MultiIndex& a) {
  if (!a.all_even()) return 0.0;
  double result = 1.0;
  for (int e : a.exponents()) result *= double_factorial(e - 1) / std::ldexp(1.0, e / 2);
  return result;
}

double raw_gaussian_moment(const MultiIndex& a) {
  if (!a.all_even()) return 0.0;
  // Gamma((n+1)/2) = sqrt(pi) (n-1)!! / 2^(n/2) per axis.
  double result = 1.0;
  for (int e : a.exponents()) {
    result *= std::sqrt(std::numbers::pi) * double_factorial(e - 1) / std::ldexp(1.0, e / 2);
  }
  return result;
}

namespace {

// Partitions of q into at most max_parts parts, each <= largest, emitted in
// lexicographically descending order.
void enumerate_partitions(int q, int max_parts, int largest, std::vector<int>& prefix,
                          std::vector<std::vector<int>>& out) {
  if (q == 0) {
    out.push_back(prefix);
    return;
  }
  if (max_parts == 0) return;
  for (int part = std::min(q, largest); part >= 1; --part) {
    prefix.push_back(part);
    enumerate_partitions(q - part, max_parts - 1, part, prefix, out);
    prefix.pop_back();
  }
}

}  // namespace

ConditionSet generate_conditions(int dim, int max_order) {
  if (dim < 1 || dim > kMaxDim) throw std::invalid_argument(fmt::format("generate_conditions: dim {} unsupported", dim));
  if (max_order < 0) throw std::invalid_argument("generate_conditions: negative order");

  ConditionSet set{dim, max_order, {}};
  for (int q = 0; q <= max_order; ++q) {
    std::vector<std::vector<int>> partitions;
    std::vector<int> prefix;
    enumerate_partitions(q, dim, q, prefix, partitions);
    for (const auto& parts : partitions) {
      std::vector<int> exponents(dim, 0);
      std::transform(parts.begin(), parts.end(), exponents.begin(), [](int p) { return 2 * p; });
      MultiIndex rep(std::move(exponents));
      double rhs = normalized_gaussian_moment(rep);
      set.conditions.push_back({std::move(rep), rhs});
    }
  }
  return set;
}

std::string format_conditions(const ConditionSet& set) {
  std::string out;
  for (const auto& cond : set.conditions) {
    out += fmt::format("{} : {:.17g}\n", fmt::join(cond.representative.exponents(), " "), cond.rhs);
  }
  return out;
}

ConditionSet parse_conditions(std::string_view text) {
  ConditionSet set;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos || line.front() == '#') continue;
    auto colon = line.find(':');
    if (colon == std::string::npos) throw std::invalid_argument(fmt::format("conditions line {}: missing ':'", line_no));
    std::istringstream lhs(line.substr(0, colon));
    std::vector<int> exps;
    for (int a; lhs >> a;) exps.push_back(a);
    if (!lhs.eof()) throw std::invalid_argument(fmt::format("conditions line {}: bad exponent", line_no));
    std::istringstream rhs_in(line.substr(colon + 1));
    double rhs = 0.0;
    if (!(rhs_in >> rhs)) throw std::invalid_argument(fmt::format("conditions line {}: bad rhs", line_no));

    MultiIndex rep(std::move(exps));
    if (set.dim == 0) set.dim = rep.dim();
    if (rep.dim() != set.dim) throw std::invalid_argument(fmt::format("conditions line {}: dimension mismatch", line_no));
    set.max_order = std::max(set.max_order, rep.order() / 2);
    set.conditions.push_back({std::move(rep), rhs});
  }
  return set;
}

}  // namespace hlbm
