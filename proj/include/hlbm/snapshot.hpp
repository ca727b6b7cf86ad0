#ifndef HLBM_SNAPSHOT_HPP_
#define HLBM_SNAPSHOT_HPP_

#include <array>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace hlbm {

// One CSV row: `step,ix,iy,iz,z_phys,rho,ux,uy,uz,theta`. Oracle profiles use
// the same columns with `t` in place of `step`. Unused axes are zero.
struct SnapshotRow {
  double time = 0.0;
  std::array<int, 3> index{};
  double z_phys = 0.0;
  double rho = 0.0;
  std::array<double, 3> u{};
  double theta = 0.0;
};

enum class TimeColumn { step, t };

std::string snapshot_header(TimeColumn column);
std::string format_snapshot_rows(std::span<const SnapshotRow> rows, TimeColumn column);

struct SnapshotTable {
  TimeColumn column = TimeColumn::step;
  std::vector<SnapshotRow> rows;

  // Rows at the largest time in the table.
  std::vector<SnapshotRow> last_time() const;
};

SnapshotTable parse_snapshot_csv(std::string_view text);

// Two-column plot files keyed by file name: rho.dat and theta.dat from the
// snapshot (z_phys value); compare.dat joining simulation and oracle rows on
// node index (z_phys rho_sim rho_exact theta_sim theta_exact) when an oracle
// table is given.
std::map<std::string, std::string> export_plot_data(std::span<const SnapshotRow> snapshot,
                                                    std::span<const SnapshotRow> oracle = {});

}  // namespace hlbm

#endif  // HLBM_SNAPSHOT_HPP_
