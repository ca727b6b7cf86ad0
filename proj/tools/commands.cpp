#include "commands.hpp"

#include <filesystem>
#include <optional>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "hlbm/builtin_models.hpp"
#include "hlbm/config.hpp"
#include "hlbm/model_io.hpp"
#include "hlbm/moment_conditions.hpp"
#include "hlbm/shock_tube.hpp"
#include "hlbm/snapshot.hpp"
#include "hlbm/stencil.hpp"

namespace hlbm::cli {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

std::string version() { return HLBM_VERSION; }

namespace {

// Files written by one command, plus the manifest describing them.
class RunManifest {
public:
  RunManifest(std::string command, json config) : command_(std::move(command)), config_(std::move(config)) {}

  void write(const fs::path& path, std::string_view text) {
    write_text_file(path, text);
    outputs_.push_back(path.string());
  }

  void finish(const fs::path& manifest_path) const {
    json manifest;
    manifest["command"] = command_;
    manifest["version"] = version();
    manifest["config"] = config_;
    manifest["outputs"] = outputs_;
    write_text_file(manifest_path, manifest.dump(2) + "\n");
  }

private:
  std::string command_;
  json config_;
  std::vector<std::string> outputs_;
};

fs::path manifest_beside(const fs::path& file) { return fs::path(file.string() + ".manifest.json"); }

int cmd_equations(int dim, int order, const std::string& out_path, std::ostream& out) {
  const auto set = generate_conditions(dim, order);
  const auto text = format_conditions(set);
  if (out_path.empty()) {
    out << text;
    return kOk;
  }
  RunManifest manifest("equations", {{"dim", dim}, {"order", order}});
  manifest.write(out_path, text);
  manifest.finish(manifest_beside(out_path));
  return kOk;
}

int cmd_verify(const std::string& model_name, int order, double tolerance, const std::string& out_path,
               std::ostream& out) {
  const auto model = load_model(model_name);
  const auto report = verify_model(model, order, tolerance);
  const auto text = report.to_string();
  out << text;
  if (!out_path.empty()) {
    RunManifest manifest("verify", {{"model", model_name}, {"order", order}, {"tolerance", tolerance}});
    manifest.write(out_path, text);
    manifest.finish(manifest_beside(out_path));
  }
  return report.passed() ? kOk : kFailed;
}

int cmd_solve(const std::string& directions_path, int order, const ScaleSearch& search, const std::string& out_path,
              std::ostream& out, std::ostream& err) {
  const auto directions = parse_directions(read_text_file(directions_path));
  const auto conditions = generate_conditions(static_cast<int>(directions.front().size()), order);
  VelocityModel model = [&] {
    try {
      return solve_model(directions, conditions, search);
    } catch (const std::invalid_argument& e) {
      // Unknown/equation count mismatch is a usage problem.
      throw ConfigError(e.what());
    }
  }();
  if (model.has_negative_weights()) err << "warning: solution has negative weights\n";
  const auto text = format_model(model);
  if (out_path.empty()) {
    out << text;
    return kOk;
  }
  RunManifest manifest("solve", {{"directions", directions_path},
                                 {"order", order},
                                 {"c_min", search.c_min},
                                 {"c_max", search.c_max},
                                 {"grid", search.grid_points},
                                 {"tolerance", search.residual_tolerance}});
  manifest.write(out_path, text);
  manifest.finish(manifest_beside(out_path));
  return kOk;
}

struct ShockTubeOverrides {
  std::string config_path;
  std::string model;
  std::string out_dir;
  std::optional<long> steps;
  std::optional<double> omega;
  std::optional<double> tolerance;
};

int cmd_shock_tube(const ShockTubeOverrides& o, std::ostream& out) {
  auto kv = o.config_path.empty() ? KeyValueConfig{} : KeyValueConfig::parse(read_text_file(o.config_path));
  if (!o.model.empty()) kv.set("model", o.model);
  if (!o.out_dir.empty()) kv.set("output.dir", o.out_dir);
  if (o.steps) kv.set("steps", std::to_string(*o.steps));
  if (o.omega) kv.set("omega", fmt::format("{}", *o.omega));
  if (o.tolerance) kv.set("compare.tolerance", fmt::format("{}", *o.tolerance));
  const auto config = simulation_config_from(kv);

  const auto run = run_shock_tube(config);
  const fs::path dir = config.output_dir;
  const auto resolved = format_simulation_config(run.config);
  json config_json = json::object();
  const auto resolved_kv = KeyValueConfig::parse(resolved);
  for (const auto& [key, value] : resolved_kv.values()) config_json[key] = value;

  RunManifest manifest("shock-tube", config_json);
  manifest.write(dir / "config.resolved", resolved);
  manifest.write(dir / "snapshots.csv", run.snapshots_csv);
  manifest.write(dir / "oracle.csv", run.oracle_csv);
  const auto report = run.report.to_string();
  manifest.write(dir / "report.txt", report);
  manifest.finish(dir / "manifest.json");
  out << report;
  return run.report.passed() ? kOk : kFailed;
}

int cmd_export(const std::string& snapshot_path, const std::string& oracle_path, const std::string& out_dir) {
  const auto snapshot = parse_snapshot_csv(read_text_file(snapshot_path)).last_time();
  std::vector<SnapshotRow> oracle;
  if (!oracle_path.empty()) oracle = parse_snapshot_csv(read_text_file(oracle_path)).last_time();
  RunManifest manifest("export", {{"snapshot", snapshot_path}, {"oracle", oracle_path}, {"out", out_dir}});
  for (const auto& [name, text] : export_plot_data(snapshot, oracle)) manifest.write(fs::path(out_dir) / name, text);
  manifest.finish(fs::path(out_dir) / "manifest.json");
  return kOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"High-order lattice Boltzmann velocity models: moment equations, model solving, shock tube"};
  app.require_subcommand(1);
  app.set_version_flag("--version", version());

  int dim = 0;
  int order = 4;
  std::string out_path;
  auto* equations = app.add_subcommand("equations", "Print the independent moment conditions for (dim, order)");
  equations->add_option("--dim", dim, "Spatial dimension")->required()->check(CLI::Range(1, kMaxDim));
  equations->add_option("--order", order, "Maximum moment order m")->required()->check(CLI::NonNegativeNumber);
  equations->add_option("--out", out_path, "Output file (default: stdout)");

  std::string model_name;
  double tolerance = kPublishedTableTolerance;
  auto* verify = app.add_subcommand("verify", "Check a velocity model against the moment conditions");
  verify->add_option("--model", model_name, "Built-in model name or model file")->required();
  verify->add_option("--order", order, "Maximum moment order m")->check(CLI::NonNegativeNumber);
  verify->add_option("--tolerance", tolerance, "Absolute residual tolerance");
  verify->add_option("--out", out_path, "Also write the report to this file");

  std::string directions_path;
  ScaleSearch search;
  auto* solve = app.add_subcommand("solve", "Solve for c and weights given a set of direction representatives");
  solve->add_option("--directions", directions_path, "File with one direction per line")->required();
  solve->add_option("--order", order, "Maximum moment order m")->check(CLI::NonNegativeNumber);
  solve->add_option("--c-min", search.c_min, "Lower end of the c search interval")->required();
  solve->add_option("--c-max", search.c_max, "Upper end of the c search interval")->required();
  solve->add_option("--grid", search.grid_points, "Grid points in the c scan")->check(CLI::Range(3, 10000000));
  solve->add_option("--tolerance", search.residual_tolerance, "Required residual norm");
  solve->add_option("--out", out_path, "Model file to write (default: stdout)");

  ShockTubeOverrides tube;
  long steps = 0;
  double omega = 0.0;
  double plateau_tolerance = 0.0;
  auto* shock = app.add_subcommand("shock-tube", "Run the shock tube and compare with the exact Riemann solution");
  shock->add_option("--config", tube.config_path, "Key-value config file");
  shock->add_option("--model", tube.model, "Override `model`");
  shock->add_option("--out", tube.out_dir, "Override `output.dir`");
  auto* steps_opt = shock->add_option("--steps", steps, "Override `steps`")->check(CLI::PositiveNumber);
  auto* omega_opt = shock->add_option("--omega", omega, "Override `omega`");
  auto* tol_opt = shock->add_option("--tolerance", plateau_tolerance, "Override `compare.tolerance`");

  std::string snapshot_path, oracle_path;
  auto* exporter = app.add_subcommand("export", "Write two-column plot data from a snapshot CSV");
  exporter->add_option("--snapshot", snapshot_path, "Snapshot CSV")->required();
  exporter->add_option("--oracle", oracle_path, "Oracle CSV to join");
  exporter->add_option("--out", out_path, "Output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsage;
  }

  try {
    if (*equations) return cmd_equations(dim, order, out_path, out);
    if (*verify) return cmd_verify(model_name, order, tolerance, out_path, out);
    if (*solve) return cmd_solve(directions_path, order, search, out_path, out, err);
    if (*shock) {
      if (*steps_opt) tube.steps = steps;
      if (*omega_opt) tube.omega = omega;
      if (*tol_opt) tube.tolerance = plateau_tolerance;
      return cmd_shock_tube(tube, out);
    }
    if (*exporter) return cmd_export(snapshot_path, oracle_path, out_path);
  } catch (const SolveError& e) {
    err << "error: " << e.what() << "\n";
    return kFailed;
  } catch (const SimulationError& e) {
    err << "error: " << e.what() << "\n";
    return kFailed;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"hlbm"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace hlbm::cli
