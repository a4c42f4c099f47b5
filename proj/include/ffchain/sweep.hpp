#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ffchain/states.hpp"

namespace ffc {

enum class SweepKind { phase, degeneracy_curves };

struct GridSpec {
  double lo = 0.0, hi = 0.0;
  int steps = 1;
};

struct SweepConfig {
  SweepKind kind = SweepKind::phase;
  int sign = +1;  // +1 real-plus, -1 real-minus
  GridSpec p_grid{0.02, 0.5, 25};
  GridSpec dtheta_grid{0.0, 1.5707963267948966, 25};
  std::vector<int> n_list{6, 8};
  std::string csv_path = "sweep.csv";
  std::string manifest_path;  // empty: csv_path + ".manifest.json"
  int workers = 0;            // 0 picks FFCHAIN_WORKERS or the hardware count
  std::uint64_t seed = 7;
  bool emit_plot_stub = true;
};

struct PhaseRow {
  double p = 0.0, dtheta = 0.0;
  PhaseKind phase = PhaseKind::GappedDistinctModuli;
  std::vector<int> tn_prop;     // per n, 0/1
  std::vector<double> gap;      // per n
  std::vector<double> bound;    // per n, 1/(n-1)
  std::vector<int> within;      // per n, 1/0, -1 when the point is not gapless
};

struct CurveRow {
  double p = 0.0, dtheta = 0.0;
  int on_curve = 0;  // T^n proportional to the identity
  int degeneracy = 0;
};

struct SpotCheck {
  double p = 0.0, dtheta = 0.0;
  int n = 0, expected = 0, numeric = 0;
  bool ok = false;
};

struct SweepResult {
  SweepConfig config;
  std::vector<PhaseRow> phase_rows;   // kind == phase, sorted by (p, dtheta)
  std::vector<CurveRow> curve_rows;   // kind == degeneracy_curves
  std::vector<SpotCheck> spot_checks;
  bool spot_all_ok = true;
  double wall_time_s = 0.0;
};

// Evaluates the grid (parallel over points, deterministic row order). The
// degeneracy-curves kind requires family real-plus and exactly one chain size,
// and spot-validates five on-curve and five off-curve points numerically.
SweepResult run_sweep(const SweepConfig& cfg);

// Frozen text renderings; byte-identical for identical config + seed
// (wall_time_s in the manifest is the one runtime-dependent field).
std::string sweep_csv(const SweepResult& res);
std::string sweep_manifest_json(const SweepResult& res);
std::string sweep_plot_stub(const SweepConfig& cfg);
std::string sweep_config_hash(const SweepConfig& cfg);

// Writes csv, manifest and (optionally) the plot stub next to the CSV.
void write_sweep_outputs(const SweepResult& res);

const char* build_id();

}  // namespace ffc
