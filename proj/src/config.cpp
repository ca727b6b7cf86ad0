#include "hlbm/config.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include <fmt/format.h>

namespace hlbm {

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

template <typename T>
std::vector<T> parse_list(const std::string& key, const std::string& text) {
  std::istringstream in(text);
  std::vector<T> out;
  std::string token;
  while (in >> token) {
    std::istringstream one(token);
    T value{};
    if (!(one >> value) || !one.eof()) throw ConfigError(fmt::format("config `{}`: cannot parse `{}`", key, token));
    out.push_back(value);
  }
  return out;
}

const char* const kAxisNames[] = {"x", "y", "z", "w"};

}  // namespace

KeyValueConfig KeyValueConfig::parse(std::string_view text) {
  KeyValueConfig config;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (trim(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError(fmt::format("config line {}: expected `key = value`", line_no));
    auto key = trim(std::string_view(line).substr(0, eq));
    auto value = trim(std::string_view(line).substr(eq + 1));
    if (key.empty()) throw ConfigError(fmt::format("config line {}: empty key", line_no));
    config.values_[key] = value;
  }
  return config;
}

std::string KeyValueConfig::get_string(const std::string& key, const std::string& fallback) const {
  auto it = values_.find(key);
  return it == values_.end() ? fallback : it->second;
}

double KeyValueConfig::get_double(const std::string& key, double fallback) const {
  if (!has(key)) return fallback;
  auto values = parse_list<double>(key, values_.at(key));
  if (values.size() != 1) throw ConfigError(fmt::format("config `{}`: expected one number", key));
  return values.front();
}

long KeyValueConfig::get_long(const std::string& key, long fallback) const {
  if (!has(key)) return fallback;
  auto values = parse_list<long>(key, values_.at(key));
  if (values.size() != 1) throw ConfigError(fmt::format("config `{}`: expected one integer", key));
  return values.front();
}

std::vector<double> KeyValueConfig::get_doubles(const std::string& key, std::vector<double> fallback) const {
  return has(key) ? parse_list<double>(key, values_.at(key)) : std::move(fallback);
}

std::vector<int> KeyValueConfig::get_ints(const std::string& key, std::vector<int> fallback) const {
  return has(key) ? parse_list<int>(key, values_.at(key)) : std::move(fallback);
}

GridSpec SimulationConfig::grid() const {
  GridSpec grid;
  grid.dims = dims;
  for (int axis = 0; axis < dim(); ++axis) {
    AxisBoundary b;
    b.kind = boundaries[axis];
    b.low = left;
    b.high = init == InitKind::shock_tube && axis == this->axis ? right : left;
    grid.boundaries.push_back(b);
  }
  return grid;
}

MacroState SimulationConfig::initial_state(std::span<const int> coords) const {
  if (init == InitKind::uniform) return left;
  return coords[axis] < split ? left : right;
}

namespace {

MacroState read_state(const KeyValueConfig& kv, const std::string& prefix, const MacroState& fallback, int dim) {
  MacroState s = fallback;
  s.rho = kv.get_double(prefix + "rho", fallback.rho);
  s.theta = kv.get_double(prefix + "theta", fallback.theta);
  auto u = kv.get_doubles(prefix + "u", std::vector<double>(fallback.u.begin(), fallback.u.begin() + dim));
  if (static_cast<int>(u.size()) != dim) throw ConfigError(fmt::format("config `{}u`: expected {} components", prefix, dim));
  s.u = {};
  std::copy(u.begin(), u.end(), s.u.begin());
  if (!s.valid()) throw ConfigError(fmt::format("config `{}*`: need rho > 0 and theta > 0", prefix));
  return s;
}

}  // namespace

SimulationConfig simulation_config_from(const KeyValueConfig& kv) {
  static const std::set<std::string> known = {
      "model",           "omega",          "steps",           "dims",           "boundary.x",        "boundary.y",
      "boundary.z",      "boundary.w",     "init.type",       "init.axis",      "init.split",        "init.rho",
      "init.theta",      "init.u",         "init.left.rho",   "init.left.theta", "init.left.u",      "init.right.rho",
      "init.right.theta", "init.right.u",  "output.dir",      "output.every",   "output.nodes",      "compare.tolerance"};
  for (const auto& [key, value] : kv.values()) {
    if (!known.count(key)) throw ConfigError(fmt::format("config: unknown key `{}`", key));
  }

  SimulationConfig c;
  c.model = kv.get_string("model", c.model);
  c.omega = kv.get_double("omega", c.omega);
  if (!(c.omega > 0.0 && c.omega < 2.0)) throw ConfigError(fmt::format("config `omega`: {} outside (0, 2)", c.omega));

  const auto steps = kv.get_string("steps", "auto");
  if (steps != "auto") {
    c.steps = kv.get_long("steps", 0);
    if (*c.steps < 0) throw ConfigError("config `steps`: must be non-negative");
  }

  c.dims = kv.get_ints("dims", c.dims);
  const int dim = c.dim();
  if (dim < 1 || dim > kMaxDim) throw ConfigError(fmt::format("config `dims`: {} axes unsupported", dim));
  if (std::any_of(c.dims.begin(), c.dims.end(), [](int d) { return d < 1; })) throw ConfigError("config `dims`: must be positive");

  const auto type = kv.get_string("init.type", "shock_tube");
  if (type == "shock_tube") {
    c.init = InitKind::shock_tube;
  } else if (type == "uniform") {
    c.init = InitKind::uniform;
  } else {
    throw ConfigError(fmt::format("config `init.type`: unknown `{}`", type));
  }
  c.axis = static_cast<int>(kv.get_long("init.axis", dim - 1));
  if (c.axis < 0 || c.axis >= dim) throw ConfigError("config `init.axis`: out of range");
  c.split = static_cast<int>(kv.get_long("init.split", c.dims[c.axis] / 2));

  if (c.init == InitKind::uniform) {
    c.left = read_state(kv, "init.", MacroState{1.0, {}, 1.0}, dim);
    c.right = c.left;
  } else {
    c.left = read_state(kv, "init.left.", c.left, dim);
    c.right = read_state(kv, "init.right.", c.right, dim);
  }

  c.boundaries.clear();
  for (int axis = 0; axis < dim; ++axis) {
    const std::string key = std::string("boundary.") + kAxisNames[axis];
    const bool tube_axis = c.init == InitKind::shock_tube && axis == c.axis;
    const auto value = kv.get_string(key, tube_axis ? "fixed" : "periodic");
    if (value == "periodic") {
      c.boundaries.push_back(BoundaryKind::periodic);
    } else if (value == "fixed") {
      if (c.init == InitKind::shock_tube && !tube_axis) throw ConfigError(fmt::format("config `{}`: fixed faces only on the tube axis", key));
      c.boundaries.push_back(BoundaryKind::fixed_equilibrium);
    } else {
      throw ConfigError(fmt::format("config `{}`: expected periodic or fixed", key));
    }
  }

  c.output_dir = kv.get_string("output.dir", c.output_dir);
  c.output_every = kv.get_long("output.every", c.output_every);
  if (c.output_every < 0) throw ConfigError("config `output.every`: must be non-negative");
  const auto nodes = kv.get_string("output.nodes", "axis");
  if (nodes == "axis") {
    c.output_nodes = OutputNodes::axis;
  } else if (nodes == "all") {
    c.output_nodes = OutputNodes::all;
  } else {
    throw ConfigError("config `output.nodes`: expected axis or all");
  }
  c.plateau_tolerance = kv.get_double("compare.tolerance", c.plateau_tolerance);
  return c;
}

SimulationConfig parse_simulation_config(std::string_view text) {
  return simulation_config_from(KeyValueConfig::parse(text));
}

std::string format_simulation_config(const SimulationConfig& c) {
  auto state = [&](const std::string& prefix, const MacroState& s) {
    return fmt::format("{0}rho = {1}\n{0}theta = {2}\n{0}u = {3}\n", prefix, s.rho, s.theta,
                       fmt::join(s.u.begin(), s.u.begin() + c.dim(), " "));
  };
  std::string out;
  out += fmt::format("model = {}\n", c.model);
  out += fmt::format("omega = {}\n", c.omega);
  out += c.steps ? fmt::format("steps = {}\n", *c.steps) : std::string("steps = auto\n");
  out += fmt::format("dims = {}\n", fmt::join(c.dims, " "));
  for (int axis = 0; axis < c.dim(); ++axis) {
    out += fmt::format("boundary.{} = {}\n", kAxisNames[axis],
                       c.boundaries[axis] == BoundaryKind::periodic ? "periodic" : "fixed");
  }
  if (c.init == InitKind::uniform) {
    out += "init.type = uniform\n";
    out += state("init.", c.left);
  } else {
    out += "init.type = shock_tube\n";
    out += fmt::format("init.axis = {}\ninit.split = {}\n", c.axis, c.split);
    out += state("init.left.", c.left);
    out += state("init.right.", c.right);
  }
  out += fmt::format("output.dir = {}\noutput.every = {}\noutput.nodes = {}\n", c.output_dir, c.output_every,
                     c.output_nodes == OutputNodes::axis ? "axis" : "all");
  out += fmt::format("compare.tolerance = {}\n", c.plateau_tolerance);
  return out;
}

}  // namespace hlbm
