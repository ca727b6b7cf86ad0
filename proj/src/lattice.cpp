#include "hlbm/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

namespace hlbm {

namespace {

constexpr int kLow = -1;
constexpr int kHigh = -2;

}  // namespace

std::size_t GridSpec::node_count() const {
  std::size_t n = 1;
  for (int d : dims) n *= static_cast<std::size_t>(d);
  return n;
}

MacroState macro_fields(std::span<const double> f, const VelocityModel& model) {
  const int dim = model.dim();
  double rho = 0.0;
  std::array<double, kMaxDim> momentum{};
  double energy = 0.0;
  for (int i = 0; i < model.size(); ++i) {
    double v2 = 0.0;
    for (int axis = 0; axis < dim; ++axis) {
      const double v = model.velocity(i, axis);
      momentum[axis] += v * f[i];
      v2 += v * v;
    }
    rho += f[i];
    energy += v2 * f[i];
  }
  if (!std::isfinite(rho) || !(rho > 0.0)) throw std::domain_error(fmt::format("non-positive density {}", rho));
  MacroState state;
  state.rho = rho;
  double u2 = 0.0;
  for (int axis = 0; axis < dim; ++axis) {
    state.u[axis] = momentum[axis] / rho;
    u2 += state.u[axis] * state.u[axis];
  }
  state.theta = (2.0 / dim) * (energy / rho - u2);
  if (!state.valid()) throw std::domain_error(fmt::format("invalid state rho {} theta {}", state.rho, state.theta));
  return state;
}

void collide(std::span<double> f, const MacroState& state, double omega, const EquilibriumKernel& kernel,
             std::span<double> scratch) {
  kernel.evaluate(state, scratch);
  const double keep = 1.0 - omega;
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = keep * f[i] + omega * scratch[i];
}

std::vector<double> collide(std::span<const double> f, const MacroState& state, double omega,
                            const VelocityModel& model) {
  if (!(omega > 0.0 && omega < 2.0)) throw std::invalid_argument("collide: omega must lie in (0, 2)");
  std::vector<double> out(f.begin(), f.end());
  std::vector<double> scratch(model.size());
  collide(out, state, omega, EquilibriumKernel(model), scratch);
  return out;
}

Streamer::Streamer(const VelocityModel& model, const GridSpec& grid)
    : q_(model.size()), dim_(grid.dim()), dims_(grid.dims) {
  if (grid.dim() != model.dim()) throw std::invalid_argument("Streamer: grid and model dimensions differ");
  if (static_cast<int>(grid.boundaries.size()) != dim_) throw std::invalid_argument("Streamer: one boundary per axis required");
  std::size_t stride = 1;
  for (int axis = 0; axis < dim_; ++axis) {
    strides_.push_back(stride);
    stride *= static_cast<std::size_t>(dims_[axis]);
  }
  for (int i = 0; i < q_; ++i) {
    for (int axis = 0; axis < dim_; ++axis) {
      source_offset_.push_back(source_.size());
      const int n = dims_[axis];
      const int e = model.direction(i)[axis];
      const bool periodic = grid.boundaries[axis].kind == BoundaryKind::periodic;
      for (int x = 0; x < n; ++x) {
        int s = x - e;
        if (periodic) {
          s = ((s % n) + n) % n;
        } else if (s < 0) {
          s = kLow;
        } else if (s >= n) {
          s = kHigh;
        }
        source_.push_back(s);
      }
    }
  }
  for (int axis = 0; axis < dim_; ++axis) {
    const auto& b = grid.boundaries[axis];
    if (b.kind == BoundaryKind::fixed_equilibrium) {
      low_eq_.push_back(discrete_equilibrium(model, b.low));
      high_eq_.push_back(discrete_equilibrium(model, b.high));
    } else {
      low_eq_.emplace_back();
      high_eq_.emplace_back();
    }
  }
}

void Streamer::operator()(const PopulationField& src, PopulationField& dst) const {
  const auto nodes = static_cast<long>(src.nodes());
#pragma omp parallel for schedule(static)
  for (long n = 0; n < nodes; ++n) {
    std::array<int, kMaxDim> x{};
    std::size_t rest = static_cast<std::size_t>(n);
    for (int axis = 0; axis < dim_; ++axis) {
      x[axis] = static_cast<int>(rest % dims_[axis]);
      rest /= dims_[axis];
    }
    auto out = dst.node(static_cast<std::size_t>(n));
    for (int i = 0; i < q_; ++i) {
      std::size_t source_node = 0;
      const double* boundary = nullptr;
      for (int axis = 0; axis < dim_; ++axis) {
        const int s = source_[source_offset_[static_cast<std::size_t>(i) * dim_ + axis] + x[axis]];
        if (s == kLow) {
          boundary = &low_eq_[axis][i];
          break;
        }
        if (s == kHigh) {
          boundary = &high_eq_[axis][i];
          break;
        }
        source_node += static_cast<std::size_t>(s) * strides_[axis];
      }
      out[i] = boundary ? *boundary : src.node(source_node)[i];
    }
  }
}

Lattice::Lattice(VelocityModel model, GridSpec grid, double omega)
    : model_(std::move(model)),
      grid_(std::move(grid)),
      omega_(omega),
      kernel_(model_),
      streamer_(model_, grid_),
      current_(grid_.node_count(), model_.size()),
      next_(grid_.node_count(), model_.size()) {
  if (!(omega_ > 0.0 && omega_ < 2.0)) throw std::invalid_argument(fmt::format("omega {} outside (0, 2)", omega_));
  if (std::any_of(grid_.dims.begin(), grid_.dims.end(), [](int d) { return d < 1; })) {
    throw std::invalid_argument("grid dimensions must be positive");
  }
}

void Lattice::initialize(const Initializer& init) {
  for (std::size_t n = 0; n < current_.nodes(); ++n) {
    const auto coords = node_coords(n);
    const MacroState state = init(coords);
    if (!state.valid()) throw std::invalid_argument(fmt::format("initial state at node ({}) is invalid", fmt::join(coords, ",")));
    kernel_.evaluate(state, current_.node(n));
  }
  steps_ = 0;
}

void Lattice::step() {
  const auto nodes = static_cast<long>(current_.nodes());
  long first_bad = std::numeric_limits<long>::max();
#pragma omp parallel
  {
    std::vector<double> scratch(model_.size());
#pragma omp for schedule(static) reduction(min : first_bad)
    for (long n = 0; n < nodes; ++n) {
      auto f = current_.node(static_cast<std::size_t>(n));
      try {
        collide(f, macro_fields(f, model_), omega_, kernel_, scratch);
      } catch (const std::domain_error&) {
        first_bad = std::min(first_bad, n);
      }
    }
  }
  if (first_bad != std::numeric_limits<long>::max()) {
    const auto coords = node_coords(static_cast<std::size_t>(first_bad));
    std::string reason;
    try {
      macro_fields(current_.node(static_cast<std::size_t>(first_bad)), model_);
    } catch (const std::domain_error& e) {
      reason = e.what();
    }
    throw SimulationError(fmt::format("step {}: node ({}): {}", steps_, fmt::join(coords, ","), reason), steps_, coords);
  }
  streamer_(current_, next_);
  std::swap(current_, next_);
  ++steps_;
}

void Lattice::run(long steps, const std::function<void(const Lattice&)>& after_step) {
  for (long s = 0; s < steps; ++s) {
    step();
    if (after_step) after_step(*this);
  }
}

std::size_t Lattice::node_index(std::span<const int> coords) const {
  std::size_t n = 0;
  std::size_t stride = 1;
  for (int axis = 0; axis < grid_.dim(); ++axis) {
    n += static_cast<std::size_t>(coords[axis]) * stride;
    stride *= static_cast<std::size_t>(grid_.dims[axis]);
  }
  return n;
}

std::vector<int> Lattice::node_coords(std::size_t n) const {
  std::vector<int> coords(grid_.dim());
  for (int axis = 0; axis < grid_.dim(); ++axis) {
    coords[axis] = static_cast<int>(n % grid_.dims[axis]);
    n /= grid_.dims[axis];
  }
  return coords;
}

MacroState Lattice::macro_at(std::size_t n) const { return macro_fields(current_.node(n), model_); }

Totals Lattice::totals() const {
  Totals t;
  for (std::size_t n = 0; n < current_.nodes(); ++n) {
    auto f = current_.node(n);
    for (int i = 0; i < model_.size(); ++i) {
      double v2 = 0.0;
      for (int axis = 0; axis < model_.dim(); ++axis) {
        const double v = model_.velocity(i, axis);
        t.momentum[axis] += v * f[i];
        v2 += v * v;
      }
      t.mass += f[i];
      t.energy += v2 * f[i];
    }
  }
  return t;
}

}  // namespace hlbm
