#include "hlbm/model_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <fmt/format.h>

#include "hlbm/builtin_models.hpp"

namespace hlbm {

namespace {

bool skip_line(const std::string& line) {
  auto first = line.find_first_not_of(" \t\r");
  return first == std::string::npos || line[first] == '#';
}

}  // namespace

std::string format_model(const VelocityModel& model) {
  std::string out = fmt::format("D {} c {:.17g}\n", model.dim(), model.scale());
  for (const auto& group : model.groups()) {
    out += fmt::format("{} {:.17g}\n", fmt::join(group.representative, " "), group.weight);
  }
  return out;
}

VelocityModel parse_model(std::string_view text, std::string name) {
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  int dim = 0;
  double scale = 0.0;
  std::vector<VelocityGroup> groups;
  while (std::getline(in, line)) {
    ++line_no;
    if (skip_line(line)) continue;
    std::istringstream fields(line);
    if (dim == 0) {
      std::string d_key, c_key;
      if (!(fields >> d_key >> dim >> c_key >> scale) || d_key != "D" || c_key != "c") {
        throw std::invalid_argument(fmt::format("model line {}: expected header `D <dim> c <value>`", line_no));
      }
      if (dim < 1 || dim > kMaxDim) throw std::invalid_argument(fmt::format("model line {}: unsupported dimension {}", line_no, dim));
      continue;
    }
    std::vector<double> values;
    for (double v; fields >> v;) values.push_back(v);
    if (!fields.eof() || static_cast<int>(values.size()) != dim + 1) {
      throw std::invalid_argument(fmt::format("model line {}: expected {} integers and a weight", line_no, dim));
    }
    VelocityGroup group;
    for (int k = 0; k < dim; ++k) {
      if (values[k] != static_cast<int>(values[k])) throw std::invalid_argument(fmt::format("model line {}: non-integer direction", line_no));
      group.representative.push_back(static_cast<int>(values[k]));
    }
    group.weight = values[dim];
    groups.push_back(std::move(group));
  }
  if (dim == 0) throw std::invalid_argument("model: missing header");
  return VelocityModel(std::move(name), dim, scale, std::move(groups));
}

std::vector<Direction> parse_directions(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  bool model_file = false;
  std::vector<Direction> directions;
  while (std::getline(in, line)) {
    ++line_no;
    if (skip_line(line)) continue;
    std::istringstream fields(line);
    std::vector<std::string> tokens;
    for (std::string t; fields >> t;) tokens.push_back(t);
    if (directions.empty() && !model_file && tokens.front() == "D") {
      model_file = true;
      continue;
    }
    if (model_file) tokens.pop_back();
    Direction d;
    for (const auto& t : tokens) {
      std::size_t used = 0;
      int value = 0;
      try {
        value = std::stoi(t, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != t.size()) throw std::invalid_argument(fmt::format("directions line {}: `{}` is not an integer", line_no, t));
      d.push_back(value);
    }
    if (!directions.empty() && d.size() != directions.front().size()) {
      throw std::invalid_argument(fmt::format("directions line {}: dimension mismatch", line_no));
    }
    directions.push_back(std::move(d));
  }
  if (directions.empty()) throw std::invalid_argument("directions: no directions given");
  return directions;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error(fmt::format("cannot open {}", path.string()));
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error(fmt::format("cannot write {}", path.string()));
  out << text;
}

VelocityModel load_model(std::string_view name_or_path) {
  if (is_builtin_model(name_or_path)) return builtin_model(name_or_path);
  return parse_model(read_text_file(std::filesystem::path(name_or_path)));
}

}  // namespace hlbm
