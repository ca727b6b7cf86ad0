#ifndef HLBM_BUILTIN_MODELS_HPP_
#define HLBM_BUILTIN_MODELS_HPP_

#include <string>
#include <string_view>
#include <vector>

#include "hlbm/stencil.hpp"

namespace hlbm {

// Two-dimensional 33-velocity model, c = 0.819381, weights as published
// (6 significant digits).
VelocityModel published_d2q33();

// Three-dimensional 95-velocity model, c = 0.421803, weights as published.
VelocityModel published_d3q95();

// Same direction sets with c and weights re-solved to double precision; the
// moment conditions hold to ~1e-13 instead of ~1e-5. These round to the
// published values.
VelocityModel refined_d2q33();
VelocityModel refined_d3q95();

// "D2Q33", "D3Q95", "D2Q33-refined", "D3Q95-refined" (case-insensitive).
std::vector<std::string> builtin_model_names();
bool is_builtin_model(std::string_view name);
VelocityModel builtin_model(std::string_view name);

}  // namespace hlbm

#endif  // HLBM_BUILTIN_MODELS_HPP_
