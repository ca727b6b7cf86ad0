#ifndef HLBM_CONFIG_HPP_
#define HLBM_CONFIG_HPP_

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "hlbm/equilibrium.hpp"
#include "hlbm/lattice.hpp"

namespace hlbm {

class ConfigError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// `key = value` lines; '#' starts a comment. Later keys override earlier ones.
class KeyValueConfig {
public:
  static KeyValueConfig parse(std::string_view text);

  bool has(const std::string& key) const { return values_.count(key) != 0; }
  void set(const std::string& key, std::string value) { values_[key] = std::move(value); }
  const std::map<std::string, std::string>& values() const { return values_; }

  std::string get_string(const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& key, double fallback) const;
  long get_long(const std::string& key, long fallback) const;
  std::vector<double> get_doubles(const std::string& key, std::vector<double> fallback) const;
  std::vector<int> get_ints(const std::string& key, std::vector<int> fallback) const;

private:
  std::map<std::string, std::string> values_;
};

enum class InitKind { shock_tube, uniform };
enum class OutputNodes { axis, all };

struct SimulationConfig {
  std::string model = "D3Q95-refined";
  double omega = 1.5;
  std::optional<long> steps;  // empty: choose from the exact wave speeds
  std::vector<int> dims{2, 2, 800};
  std::vector<BoundaryKind> boundaries{BoundaryKind::periodic, BoundaryKind::periodic, BoundaryKind::fixed_equilibrium};

  InitKind init = InitKind::shock_tube;
  int axis = 2;   // tube axis
  int split = 400;  // first node index of the right state along the axis
  MacroState left{4.0, {}, 1.0};
  MacroState right{1.0, {}, 1.0};

  std::string output_dir = "shock_tube_out";
  long output_every = 0;  // 0: final snapshot only
  OutputNodes output_nodes = OutputNodes::axis;
  double plateau_tolerance = 0.015;

  int dim() const { return static_cast<int>(dims.size()); }
  // Boundary spec with face states taken from the initial condition.
  GridSpec grid() const;
  MacroState initial_state(std::span<const int> coords) const;
};

// Recognised keys: model, omega, steps, dims, boundary.{x,y,z,w},
// init.{type,axis,split,rho,theta,u,left.*,right.*}, output.{dir,every,nodes},
// compare.tolerance.
SimulationConfig simulation_config_from(const KeyValueConfig& kv);
SimulationConfig parse_simulation_config(std::string_view text);
// Fully resolved configuration in the same key-value format.
std::string format_simulation_config(const SimulationConfig& config);

}  // namespace hlbm

#endif  // HLBM_CONFIG_HPP_
