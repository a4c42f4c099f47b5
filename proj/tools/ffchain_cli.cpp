// Command-line front end. Everything goes through the C surface in ffchain.h;
// the JSON helpers here are only for assembling configs and reading results.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "ffchain.h"

namespace {

using nlohmann::json;

constexpr int kExitSuccess = 0;
constexpr int kExitFailure = 1;  // computation failed or a suite reported failures
constexpr int kExitBadInput = 2;

std::string read_all(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream f(path);
  if (!f.good()) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

int exit_code(ffc_status st) {
  if (st == FFC_OK) return kExitSuccess;
  return st == FFC_ERR_INVALID ? kExitBadInput : kExitFailure;
}

// prints the result (or the error) and frees the string
int finish(ffc_status st, char* out) {
  if (st != FFC_OK) {
    std::cerr << "error: " << ffc_last_error() << "\n";
    ffc_string_free(out);
    return exit_code(st);
  }
  if (out) std::cout << out;
  ffc_string_free(out);
  return kExitSuccess;
}

bool parse_grid(const std::string& text, json& out) {
  double lo = 0, hi = 0;
  int steps = 0;
  char tail = 0;
  if (std::sscanf(text.c_str(), "%lf:%lf:%d%c", &lo, &hi, &steps, &tail) != 3) return false;
  out = json{{"lo", lo}, {"hi", hi}, {"steps", steps}};
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Frustration-free qubit chain toolkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(ffc_version()));

  std::string input = "-";
  std::string state_inline;
  auto* classify = app.add_subcommand("classify", "Phase class of a two-qubit state");
  classify->add_option("--input", input, "State literal JSON file, - for stdin");
  classify->add_option("--state", state_inline, "Inline state literal JSON");

  std::string gap_method = "automatic";
  double gap_tol = 1e-8;
  auto* gap = app.add_subcommand("gap", "Smallest nonzero eigenvalue of a chain");
  gap->add_option("--input", input, "Chain JSON file, - for stdin");
  gap->add_option("--method", gap_method, "automatic | dense | deflated")
      ->check(CLI::IsMember({"automatic", "dense", "deflated"}));
  gap->add_option("--tol", gap_tol, "Iterative tolerance");

  auto* degeneracy = app.add_subcommand("degeneracy", "Ground-space dimension of a chain");
  degeneracy->add_option("--input", input, "Chain JSON file, - for stdin");

  std::string family = "real-plus", sweep_kind = "phase";
  std::string p_spec = "0.02:0.5:25", dtheta_spec = "0:1.5707963267948966:25";
  std::vector<int> n_list{6, 8};
  std::string csv_path = "sweep.csv", manifest_path;
  int workers = 0;
  std::uint64_t seed = 7;
  bool no_plot = false;
  auto* sweep = app.add_subcommand("sweep", "Grid sweep of the rotated real family");
  sweep->add_option("--family", family, "real-plus | real-minus")
      ->check(CLI::IsMember({"real-plus", "real-minus"}));
  sweep->add_option("--kind", sweep_kind, "phase | degeneracy-curves")
      ->check(CLI::IsMember({"phase", "degeneracy-curves"}));
  sweep->add_option("--p", p_spec, "p grid lo:hi:steps");
  sweep->add_option("--dtheta", dtheta_spec, "dtheta grid lo:hi:steps");
  sweep->add_option("--n", n_list, "Chain sizes")->delimiter(',');
  sweep->add_option("--csv", csv_path, "Output CSV path");
  sweep->add_option("--manifest", manifest_path, "Manifest path (default csv + .manifest.json)");
  sweep->add_option("--workers", workers, "Worker threads, 0 = FFCHAIN_WORKERS or hardware");
  sweep->add_option("--seed", seed, "Seed recorded in the manifest");
  sweep->add_flag("--no-plot-stub", no_plot, "Skip the plot script stub");

  std::string suite;
  int trials = 20, n_lo = 3, n_hi = 6;
  std::string report_path;
  auto* verify = app.add_subcommand("verify", "Run a verification suite");
  verify->add_option("--suite", suite, "Suite name, see --list")
      ->check(CLI::IsMember(
          {"monotonicity", "knabe", "weyl", "decay", "region-exclusion", "rank2", "degeneracy"}));
  bool list_suites = false;
  verify->add_flag("--list", list_suites, "List suite names and exit");
  verify->add_option("--trials", trials, "Trial count");
  verify->add_option("--seed", seed, "Base seed");
  std::string n_range;
  verify->add_option("--n", n_range, "Size range lo:hi");
  verify->add_option("--workers", workers, "Worker threads");
  verify->add_option("--output", report_path, "Also write the report JSON here");

  bool reduce = false;
  auto* rank = app.add_subcommand("rank-classify", "Classify a 4x4 projector");
  rank->add_option("--input", input, "Matrix JSON file, - for stdin");
  rank->add_flag("--reduce", reduce, "Replace a PSD matrix by its range projector first");

  double theta = 0.0;
  int count = 10;
  auto* conv = app.add_subcommand("convergents", "Continued-fraction approximations");
  conv->add_option("--theta", theta, "Target value")->required();
  conv->add_option("--count", count, "How many convergents");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitBadInput;
  }

  try {
    char* out = nullptr;
    if (classify->parsed()) {
      const std::string text = state_inline.empty() ? read_all(input) : state_inline;
      const ffc_status st = ffc_state_classify(text.c_str(), &out);
      return finish(st, out);
    }
    if (gap->parsed() || degeneracy->parsed()) {
      const std::string text = read_all(input);
      ffc_chain* chain = nullptr;
      ffc_status st = ffc_chain_create(text.c_str(), &chain);
      if (st != FFC_OK) return finish(st, nullptr);
      st = gap->parsed() ? ffc_chain_gap(chain, gap_method.c_str(), gap_tol, &out)
                         : ffc_chain_degeneracy(chain, &out);
      ffc_chain_destroy(chain);
      return finish(st, out);
    }
    if (sweep->parsed()) {
      json p_grid, t_grid;
      if (!parse_grid(p_spec, p_grid) || !parse_grid(dtheta_spec, t_grid)) {
        std::cerr << "error: grids are lo:hi:steps\n";
        return kExitBadInput;
      }
      json cfg{{"kind", sweep_kind}, {"family", family},    {"p", p_grid},
               {"dtheta", t_grid},   {"n_list", n_list},    {"csv", csv_path},
               {"workers", workers}, {"seed", seed},        {"plot_stub", !no_plot}};
      if (!manifest_path.empty()) cfg["manifest"] = manifest_path;
      const ffc_status st = ffc_sweep_run(cfg.dump().c_str(), &out);
      return finish(st, out);
    }
    if (verify->parsed()) {
      if (list_suites) {
        const ffc_status st = ffc_verify_suites(&out);
        return finish(st, out);
      }
      if (suite.empty()) {
        std::cerr << "error: --suite is required (or --list)\n";
        return kExitBadInput;
      }
      json cfg{{"suite", suite}, {"trials", trials}, {"seed", seed}, {"workers", workers}};
      if (!n_range.empty()) {
        int lo = 0, hi = 0;
        char tail = 0;
        if (std::sscanf(n_range.c_str(), "%d:%d%c", &lo, &hi, &tail) != 2) {
          std::cerr << "error: --n wants lo:hi\n";
          return kExitBadInput;
        }
        cfg["n_lo"] = lo;
        cfg["n_hi"] = hi;
      } else {
        cfg["n_lo"] = n_lo;
        cfg["n_hi"] = n_hi;
      }
      const ffc_status st = ffc_verify_run(cfg.dump().c_str(), &out);
      if (st != FFC_OK) return finish(st, out);
      const std::string text = out ? out : "";
      ffc_string_free(out);
      std::cout << text;
      if (!report_path.empty()) {
        std::ofstream f(report_path);
        if (!f.good()) {
          std::cerr << "error: cannot write " << report_path << "\n";
          return kExitBadInput;
        }
        f << text;
      }
      const json report = json::parse(text);
      return report.value("all_pass", false) ? kExitSuccess : kExitFailure;
    }
    if (rank->parsed()) {
      const std::string text = read_all(input);
      const ffc_status st = ffc_rank_classify(text.c_str(), reduce ? 1 : 0, &out);
      return finish(st, out);
    }
    if (conv->parsed()) {
      const ffc_status st = ffc_convergents(theta, count, &out);
      return finish(st, out);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  }
  return kExitBadInput;
}
