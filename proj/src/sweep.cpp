#include "ffchain/sweep.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>

#include "ffchain/errors.hpp"
#include "ffchain/groundspace.hpp"
#include "ffchain/json_io.hpp"
#include "ffchain/parallel.hpp"
#include "ffchain/spectral.hpp"

namespace ffc {
namespace {

double grid_value(const GridSpec& g, int i) {
  if (g.steps <= 1) return g.lo;
  return g.lo + (g.hi - g.lo) * double(i) / double(g.steps - 1);
}

void validate(const SweepConfig& cfg) {
  require(cfg.p_grid.steps >= 1 && cfg.dtheta_grid.steps >= 1, errc::invalid_argument,
          "grid steps must be positive");
  require(cfg.p_grid.lo <= cfg.p_grid.hi && cfg.dtheta_grid.lo <= cfg.dtheta_grid.hi,
          errc::invalid_argument, "grid bounds must be ordered");
  require(cfg.p_grid.lo >= 0.0 && cfg.p_grid.hi <= 0.5, errc::parameter_out_of_range,
          "p grid must lie in [0, 1/2]");
  require(cfg.sign == 1 || cfg.sign == -1, errc::invalid_argument, "family sign must be +-1");
  require(!cfg.n_list.empty(), errc::invalid_argument, "n list must be non-empty");
  for (int n : cfg.n_list)
    require(n >= 2 && n <= 12, errc::regime_violation, "sweep sizes limited to 2..12");
  if (cfg.kind == SweepKind::degeneracy_curves) {
    require(cfg.sign == 1, errc::regime_violation, "degeneracy curves use the real-plus family");
    require(cfg.n_list.size() == 1, errc::regime_violation,
            "degeneracy curves fix one chain size per output");
  }
}

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

const char* kind_name(SweepKind k) {
  return k == SweepKind::phase ? "phase" : "degeneracy-curves";
}

io::json config_json(const SweepConfig& cfg) {
  io::json j;
  j["kind"] = kind_name(cfg.kind);
  j["family"] = cfg.sign > 0 ? "real-plus" : "real-minus";
  j["p_grid"] = {{"lo", cfg.p_grid.lo}, {"hi", cfg.p_grid.hi}, {"steps", cfg.p_grid.steps}};
  j["dtheta_grid"] = {{"lo", cfg.dtheta_grid.lo},
                      {"hi", cfg.dtheta_grid.hi},
                      {"steps", cfg.dtheta_grid.steps}};
  j["n_list"] = cfg.n_list;
  j["seed"] = cfg.seed;
  j["workers"] = cfg.workers;
  j["csv"] = cfg.csv_path;
  return j;
}

std::uint64_t fnv1a(const std::string& text) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

// evenly spread picks over a candidate index list, at most five
std::vector<int> spread_picks(const std::vector<int>& candidates) {
  std::vector<int> picks;
  const int m = int(candidates.size());
  if (m == 0) return picks;
  const int want = std::min(5, m);
  for (int k = 0; k < want; ++k) {
    const int idx = candidates[std::size_t((long long)(k) * (m - 1) / std::max(1, want - 1))];
    if (picks.empty() || picks.back() != idx) picks.push_back(idx);
  }
  return picks;
}

}  // namespace

const char* build_id() { return "ffchain-0.1.0"; }

SweepResult run_sweep(const SweepConfig& cfg) {
  validate(cfg);
  const auto t0 = std::chrono::steady_clock::now();
  SweepResult res;
  res.config = cfg;
  const int np = cfg.p_grid.steps, nt = cfg.dtheta_grid.steps;
  const int total = np * nt;

  if (cfg.kind == SweepKind::phase) {
    res.phase_rows.resize(std::size_t(total));
    parallel_for(total, cfg.workers, [&](int idx) {
      const int ip = idx / nt, it = idx % nt;
      PhaseRow row;
      row.p = grid_value(cfg.p_grid, ip);
      row.dtheta = grid_value(cfg.dtheta_grid, it);
      const TwoQubitState psi = real_family(row.p, row.dtheta, 0.0, cfg.sign);
      row.phase = classify_phase(psi).kind;
      for (int n : cfg.n_list) {
        row.tn_prop.push_back(tpow_prop_identity(psi, n).proportional ? 1 : 0);
        const double gap = spectral_gap(make_chain_spec(n, Boundary::open, {psi})).gap;
        const double bound = 1.0 / double(n - 1);
        row.gap.push_back(gap);
        row.bound.push_back(bound);
        row.within.push_back(row.phase == PhaseKind::GaplessEqualModuli
                                 ? (gap <= bound + 1e-9 ? 1 : 0)
                                 : -1);
      }
      res.phase_rows[std::size_t(idx)] = std::move(row);
    });
  } else {
    const int n = cfg.n_list.front();
    res.curve_rows.resize(std::size_t(total));
    parallel_for(total, cfg.workers, [&](int idx) {
      const int ip = idx / nt, it = idx % nt;
      CurveRow row;
      row.p = grid_value(cfg.p_grid, ip);
      row.dtheta = grid_value(cfg.dtheta_grid, it);
      const TwoQubitState psi = real_family(row.p, row.dtheta, 0.0, cfg.sign);
      row.on_curve = tpow_prop_identity(psi, n).proportional ? 1 : 0;
      row.degeneracy = degeneracy(make_chain_spec(n, Boundary::periodic, {psi})).dim;
      res.curve_rows[std::size_t(idx)] = row;
    });
    if (n <= 8) {
      std::vector<int> on_idx, off_idx;
      for (int i = 0; i < total; ++i)
        (res.curve_rows[std::size_t(i)].on_curve ? on_idx : off_idx).push_back(i);
      std::vector<int> picks = spread_picks(on_idx);
      const std::vector<int> off_picks = spread_picks(off_idx);
      picks.insert(picks.end(), off_picks.begin(), off_picks.end());
      for (int i : picks) {
        const CurveRow& row = res.curve_rows[std::size_t(i)];
        const TwoQubitState psi = real_family(row.p, row.dtheta, 0.0, cfg.sign);
        const ChainSpec spec = make_chain_spec(n, Boundary::periodic, {psi});
        SpotCheck sc;
        sc.p = row.p;
        sc.dtheta = row.dtheta;
        sc.n = n;
        sc.expected = row.degeneracy;
        sc.numeric = int(kernel_basis(spec, KernelMethod::numeric).vectors.size());
        sc.ok = sc.numeric == sc.expected;
        res.spot_checks.push_back(sc);
        res.spot_all_ok = res.spot_all_ok && sc.ok;
      }
    }
  }
  res.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return res;
}

std::string sweep_csv(const SweepResult& res) {
  const SweepConfig& cfg = res.config;
  std::string out;
  if (cfg.kind == SweepKind::phase) {
    out = "p,dtheta,analytic_phase";
    for (int n : cfg.n_list) out += ",tn_prop_identity_n" + std::to_string(n);
    for (int n : cfg.n_list) out += ",gap_n" + std::to_string(n);
    for (int n : cfg.n_list) out += ",gap_bound_n" + std::to_string(n);
    for (int n : cfg.n_list) out += ",within_bound_n" + std::to_string(n);
    out += "\n";
    for (const PhaseRow& row : res.phase_rows) {
      out += fmt(row.p) + "," + fmt(row.dtheta) + "," + phase_kind_name(row.phase);
      for (int v : row.tn_prop) out += "," + std::to_string(v);
      for (double g : row.gap) out += "," + fmt(g);
      for (double b : row.bound) out += "," + fmt(b);
      for (int w : row.within) out += w < 0 ? std::string(",") : "," + std::to_string(w);
      out += "\n";
    }
  } else {
    const std::string ns = std::to_string(cfg.n_list.front());
    out = "p,dtheta,tn_prop_identity_n" + ns + ",degeneracy_n" + ns + "\n";
    for (const CurveRow& row : res.curve_rows)
      out += fmt(row.p) + "," + fmt(row.dtheta) + "," + std::to_string(row.on_curve) + "," +
             std::to_string(row.degeneracy) + "\n";
  }
  return out;
}

std::string sweep_config_hash(const SweepConfig& cfg) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%016llx",
                (unsigned long long)fnv1a(config_json(cfg).dump()));
  return buf;
}

std::string sweep_manifest_json(const SweepResult& res) {
  io::json j;
  j["schema_version"] = io::kSchemaVersion;
  j["config"] = config_json(res.config);
  j["config_hash"] = sweep_config_hash(res.config);
  j["build_id"] = build_id();
  j["wall_time_s"] = res.wall_time_s;
  j["rows"] = res.config.kind == SweepKind::phase ? res.phase_rows.size()
                                                  : res.curve_rows.size();
  if (res.config.kind == SweepKind::degeneracy_curves) {
    io::json checks = io::json::array();
    for (const SpotCheck& sc : res.spot_checks)
      checks.push_back({{"p", sc.p},
                        {"dtheta", sc.dtheta},
                        {"n", sc.n},
                        {"expected", sc.expected},
                        {"numeric", sc.numeric},
                        {"ok", sc.ok}});
    j["spot_checks"] = checks;
    j["spot_all_ok"] = res.spot_all_ok;
  }
  return j.dump(2) + "\n";
}

std::string sweep_plot_stub(const SweepConfig& cfg) {
  std::string base = cfg.csv_path;
  const auto slash = base.find_last_of('/');
  if (slash != std::string::npos) base = base.substr(slash + 1);
  std::string s;
  s += "#!/usr/bin/env python3\n";
  s += "# Generated alongside " + base + "; scatter of the swept grid.\n";
  s += "import csv\n";
  s += "import matplotlib.pyplot as plt\n\n";
  s += "rows = list(csv.DictReader(open(\"" + base + "\")))\n";
  s += "xs = [float(r[\"dtheta\"]) for r in rows]\n";
  s += "ys = [float(r[\"p\"]) for r in rows]\n";
  if (cfg.kind == SweepKind::phase) {
    s += "cs = [1.0 if r[\"analytic_phase\"] == \"GaplessEqualModuli\" else 0.0 for r in rows]\n";
  } else {
    s += "cs = [float(r[\"tn_prop_identity_n" + std::to_string(cfg.n_list.front()) +
         "\"]) for r in rows]\n";
  }
  s += "plt.scatter(xs, ys, c=cs, s=12, cmap=\"coolwarm\")\n";
  s += "plt.xlabel(\"dtheta\")\n";
  s += "plt.ylabel(\"p\")\n";
  s += "plt.colorbar()\n";
  s += "plt.savefig(\"" + base + ".png\", dpi=150)\n";
  return s;
}

void write_sweep_outputs(const SweepResult& res) {
  const SweepConfig& cfg = res.config;
  {
    std::ofstream f(cfg.csv_path);
    require(f.good(), errc::invalid_argument, "cannot open csv path: " + cfg.csv_path);
    f << sweep_csv(res);
  }
  const std::string manifest =
      cfg.manifest_path.empty() ? cfg.csv_path + ".manifest.json" : cfg.manifest_path;
  {
    std::ofstream f(manifest);
    require(f.good(), errc::invalid_argument, "cannot open manifest path: " + manifest);
    f << sweep_manifest_json(res);
  }
  if (cfg.emit_plot_stub) {
    std::ofstream f(cfg.csv_path + ".plot.py");
    require(f.good(), errc::invalid_argument, "cannot open plot stub path");
    f << sweep_plot_stub(cfg);
  }
}

}  // namespace ffc
