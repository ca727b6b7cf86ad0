#ifndef HLBM_MODEL_IO_HPP_
#define HLBM_MODEL_IO_HPP_

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "hlbm/stencil.hpp"

namespace hlbm {

// Model text format:
//   D <dim> c <value>
//   rep_1 ... rep_D weight      (one line per group)
// Blank lines and lines starting with '#' are ignored.
std::string format_model(const VelocityModel& model);
VelocityModel parse_model(std::string_view text, std::string name = {});

// One direction per line, D integers; '#' comments allowed. A model file is
// also accepted, in which case its weights are ignored.
std::vector<Direction> parse_directions(std::string_view text);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

// Built-in name or path to a model file.
VelocityModel load_model(std::string_view name_or_path);

}  // namespace hlbm

#endif  // HLBM_MODEL_IO_HPP_
