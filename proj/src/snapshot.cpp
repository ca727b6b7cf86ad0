#include "hlbm/snapshot.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include <fmt/format.h>

namespace hlbm {

std::string snapshot_header(TimeColumn column) {
  return fmt::format("{},ix,iy,iz,z_phys,rho,ux,uy,uz,theta\n", column == TimeColumn::step ? "step" : "t");
}

std::string format_snapshot_rows(std::span<const SnapshotRow> rows, TimeColumn column) {
  std::string out;
  for (const auto& r : rows) {
    if (column == TimeColumn::step) {
      out += fmt::format("{}", static_cast<long>(r.time));
    } else {
      out += fmt::format("{:.17g}", r.time);
    }
    out += fmt::format(",{},{},{},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g}\n", r.index[0], r.index[1], r.index[2],
                       r.z_phys, r.rho, r.u[0], r.u[1], r.u[2], r.theta);
  }
  return out;
}

std::vector<SnapshotRow> SnapshotTable::last_time() const {
  if (rows.empty()) return {};
  const double latest = std::max_element(rows.begin(), rows.end(), [](const auto& a, const auto& b) { return a.time < b.time; })->time;
  std::vector<SnapshotRow> out;
  std::copy_if(rows.begin(), rows.end(), std::back_inserter(out), [latest](const auto& r) { return r.time == latest; });
  return out;
}

SnapshotTable parse_snapshot_csv(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("snapshot: empty file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  SnapshotTable table;
  if (line + "\n" == snapshot_header(TimeColumn::step)) {
    table.column = TimeColumn::step;
  } else if (line + "\n" == snapshot_header(TimeColumn::t)) {
    table.column = TimeColumn::t;
  } else {
    throw std::invalid_argument(fmt::format("snapshot: unexpected header `{}`", line));
  }
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream fields(line);
    SnapshotRow r;
    if (!(fields >> r.time >> r.index[0] >> r.index[1] >> r.index[2] >> r.z_phys >> r.rho >> r.u[0] >> r.u[1] >> r.u[2] >> r.theta)) {
      throw std::invalid_argument(fmt::format("snapshot line {}: expected 10 numeric columns", line_no));
    }
    table.rows.push_back(r);
  }
  return table;
}

std::map<std::string, std::string> export_plot_data(std::span<const SnapshotRow> snapshot,
                                                    std::span<const SnapshotRow> oracle) {
  std::map<std::string, std::string> files;
  std::string rho = "# z_phys rho\n";
  std::string theta = "# z_phys theta\n";
  for (const auto& r : snapshot) {
    rho += fmt::format("{:.17g} {:.17g}\n", r.z_phys, r.rho);
    theta += fmt::format("{:.17g} {:.17g}\n", r.z_phys, r.theta);
  }
  files["rho.dat"] = std::move(rho);
  files["theta.dat"] = std::move(theta);

  if (!oracle.empty()) {
    std::map<std::array<int, 3>, const SnapshotRow*> exact;
    for (const auto& r : oracle) exact[r.index] = &r;
    std::string joined = "# z_phys rho_sim rho_exact theta_sim theta_exact\n";
    for (const auto& r : snapshot) {
      auto it = exact.find(r.index);
      if (it == exact.end()) {
        throw std::invalid_argument(fmt::format("export: no oracle row for node ({},{},{})", r.index[0], r.index[1], r.index[2]));
      }
      joined += fmt::format("{:.17g} {:.17g} {:.17g} {:.17g} {:.17g}\n", r.z_phys, r.rho, it->second->rho, r.theta, it->second->theta);
    }
    files["compare.dat"] = std::move(joined);
  }
  return files;
}

}  // namespace hlbm
