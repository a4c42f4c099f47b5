#include "ffchain.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include "ffchain/errors.hpp"
#include "ffchain/groundspace.hpp"
#include "ffchain/json_io.hpp"
#include "ffchain/rank_projectors.hpp"
#include "ffchain/spectral.hpp"
#include "ffchain/states.hpp"
#include "ffchain/sweep.hpp"
#include "ffchain/verify.hpp"

struct ffc_chain {
  ffc::ChainSpec spec;
};

namespace {

thread_local std::string g_last_error;

char* dup_string(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (!p) return nullptr;
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

ffc_status map_code(ffc::errc c) {
  switch (c) {
    case ffc::errc::no_convergence:
    case ffc::errc::conditioning:
    case ffc::errc::non_positive_value:
    case ffc::errc::kernel_not_annihilated:
      return FFC_ERR_COMPUTE;
    case ffc::errc::internal:
      return FFC_ERR_INTERNAL;
    default:
      return FFC_ERR_INVALID;
  }
}

template <typename Fn>
ffc_status wrap(char** out, Fn&& fn) noexcept {
  if (out) *out = nullptr;
  try {
    const std::string text = fn();
    if (out) {
      *out = dup_string(text);
      if (!*out) {
        g_last_error = "allocation failure";
        return FFC_ERR_INTERNAL;
      }
    }
    g_last_error.clear();
    return FFC_OK;
  } catch (const ffc::error& e) {
    g_last_error = e.what();
    return map_code(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return FFC_ERR_INTERNAL;
  }
}

ffc::GapMethod gap_method(const char* name) {
  if (!name || std::string(name) == "automatic") return ffc::GapMethod::automatic;
  const std::string m(name);
  if (m == "dense") return ffc::GapMethod::dense;
  if (m == "deflated") return ffc::GapMethod::deflated;
  ffc::fail(ffc::errc::invalid_argument, "unknown gap method: " + m);
}

ffc::KernelMethod kernel_method(const char* name) {
  if (!name || std::string(name) == "automatic") return ffc::KernelMethod::automatic;
  const std::string m(name);
  if (m == "analytic") return ffc::KernelMethod::analytic;
  if (m == "numeric") return ffc::KernelMethod::numeric;
  ffc::fail(ffc::errc::invalid_argument, "unknown kernel method: " + m);
}

ffc::GridSpec grid_from_json(const ffc::io::json& j, const ffc::GridSpec& fallback) {
  if (j.is_null()) return fallback;
  ffc::require(j.is_object() && j.contains("lo") && j.contains("hi") && j.contains("steps"),
               ffc::errc::parse, "grid wants {lo, hi, steps}");
  ffc::GridSpec g;
  g.lo = j.at("lo").get<double>();
  g.hi = j.at("hi").get<double>();
  g.steps = j.at("steps").get<int>();
  return g;
}

}  // namespace

extern "C" {

const char* ffc_version(void) { return ffc::build_id(); }

const char* ffc_last_error(void) { return g_last_error.c_str(); }

void ffc_string_free(char* s) { std::free(s); }

ffc_status ffc_state_classify(const char* state_json, char** out_json) {
  return wrap(out_json, [&] {
    ffc::require(state_json != nullptr, ffc::errc::invalid_argument, "null state");
    const ffc::TwoQubitState psi = ffc::io::state_from_string(state_json);
    return ffc::io::phase_verdict_to_json(ffc::classify_phase(psi)).dump(2) + "\n";
  });
}

ffc_status ffc_chain_create(const char* chain_json, ffc_chain** out) {
  if (out) *out = nullptr;
  char* ignore = nullptr;
  const ffc_status st = wrap(&ignore, [&] {
    ffc::require(chain_json != nullptr, ffc::errc::invalid_argument, "null chain");
    ffc::require(out != nullptr, ffc::errc::invalid_argument, "null output handle");
    *out = new ffc_chain{ffc::io::chain_spec_from_string(chain_json)};
    return std::string();
  });
  ffc_string_free(ignore);
  return st;
}

void ffc_chain_destroy(ffc_chain* chain) { delete chain; }

ffc_status ffc_chain_gap(const ffc_chain* chain, const char* method, double tol,
                         char** out_json) {
  return wrap(out_json, [&] {
    ffc::require(chain != nullptr, ffc::errc::invalid_argument, "null chain handle");
    const double t = tol > 0 ? tol : 1e-8;
    return ffc::io::gap_to_json(ffc::spectral_gap(chain->spec, gap_method(method), t))
               .dump(2) +
           "\n";
  });
}

ffc_status ffc_chain_degeneracy(const ffc_chain* chain, char** out_json) {
  return wrap(out_json, [&] {
    ffc::require(chain != nullptr, ffc::errc::invalid_argument, "null chain handle");
    return ffc::io::degeneracy_to_json(ffc::degeneracy(chain->spec)).dump(2) + "\n";
  });
}

ffc_status ffc_chain_kernel(const ffc_chain* chain, const char* method, char** out_json) {
  return wrap(out_json, [&] {
    ffc::require(chain != nullptr, ffc::errc::invalid_argument, "null chain handle");
    const ffc::KernelBasis b = ffc::kernel_basis(chain->spec, kernel_method(method));
    return ffc::io::basis_to_json(b, chain->spec.n).dump(2) + "\n";
  });
}

ffc_status ffc_convergents(double theta, int count, char** out_json) {
  return wrap(out_json, [&] {
    return ffc::io::convergents_to_json(ffc::convergents(theta, count)).dump(2) + "\n";
  });
}

ffc_status ffc_rank_classify(const char* matrix_json, int reduce, char** out_json) {
  return wrap(out_json, [&] {
    ffc::require(matrix_json != nullptr, ffc::errc::invalid_argument, "null matrix");
    const ffc::Matrix M =
        ffc::io::matrix_from_json(ffc::io::parse_text(matrix_json));
    const ffc::ProjectorSpec P = ffc::validate_projector(M, reduce != 0);
    ffc::io::json out;
    if (P.rank == 1) {
      Eigen::SelfAdjointEigenSolver<ffc::Matrix> es(P.matrix);
      const ffc::Vector top = es.eigenvectors().col(3);
      const ffc::TwoQubitState psi =
          ffc::make_state(Eigen::Vector4cd(top(0), top(1), top(2), top(3)));
      out = ffc::io::json{{"schema_version", ffc::io::kSchemaVersion},
                          {"rank", 1},
                          {"state", ffc::io::state_to_json(psi)},
                          {"phase", ffc::io::phase_verdict_to_json(ffc::classify_phase(psi))}};
    } else if (P.rank == 2) {
      out = ffc::io::rank2_to_json(ffc::classify_rank2(P));
      out["rank"] = 2;
    } else {
      out = ffc::io::rank3_to_json(ffc::classify_rank3(P));
    }
    return out.dump(2) + "\n";
  });
}

ffc_status ffc_sweep_run(const char* config_json, char** out_json) {
  return wrap(out_json, [&] {
    ffc::require(config_json != nullptr, ffc::errc::invalid_argument, "null config");
    const ffc::io::json j = ffc::io::parse_text(config_json);
    ffc::require(j.is_object(), ffc::errc::parse, "sweep config wants an object");
    ffc::SweepConfig cfg;
    const std::string kind = j.value("kind", std::string("phase"));
    if (kind == "phase")
      cfg.kind = ffc::SweepKind::phase;
    else if (kind == "degeneracy-curves")
      cfg.kind = ffc::SweepKind::degeneracy_curves;
    else
      ffc::fail(ffc::errc::invalid_argument, "unknown sweep kind: " + kind);
    const std::string family = j.value("family", std::string("real-plus"));
    if (family == "real-plus")
      cfg.sign = +1;
    else if (family == "real-minus")
      cfg.sign = -1;
    else
      ffc::fail(ffc::errc::invalid_argument, "unknown family: " + family);
    cfg.p_grid = grid_from_json(j.value("p", ffc::io::json()), cfg.p_grid);
    cfg.dtheta_grid = grid_from_json(j.value("dtheta", ffc::io::json()), cfg.dtheta_grid);
    if (j.contains("n_list")) cfg.n_list = j.at("n_list").get<std::vector<int>>();
    cfg.csv_path = j.value("csv", cfg.csv_path);
    cfg.manifest_path = j.value("manifest", cfg.manifest_path);
    cfg.workers = j.value("workers", cfg.workers);
    cfg.seed = j.value("seed", cfg.seed);
    cfg.emit_plot_stub = j.value("plot_stub", cfg.emit_plot_stub);
    const ffc::SweepResult res = ffc::run_sweep(cfg);
    ffc::write_sweep_outputs(res);
    return ffc::sweep_manifest_json(res);
  });
}

ffc_status ffc_verify_run(const char* config_json, char** out_json) {
  return wrap(out_json, [&] {
    ffc::require(config_json != nullptr, ffc::errc::invalid_argument, "null config");
    const ffc::io::json j = ffc::io::parse_text(config_json);
    ffc::require(j.is_object() && j.contains("suite"), ffc::errc::parse,
                 "verify config wants {suite, ...}");
    ffc::SuiteConfig cfg;
    cfg.trials = j.value("trials", cfg.trials);
    cfg.seed = j.value("seed", cfg.seed);
    cfg.n_lo = j.value("n_lo", cfg.n_lo);
    cfg.n_hi = j.value("n_hi", cfg.n_hi);
    cfg.workers = j.value("workers", cfg.workers);
    const ffc::SuiteReport rep = ffc::run_suite(j.at("suite").get<std::string>(), cfg);
    return ffc::io::report_to_json(rep).dump(2) + "\n";
  });
}

ffc_status ffc_verify_suites(char** out_json) {
  return wrap(out_json, [&] {
    std::string out;
    for (const std::string& s : ffc::suite_names()) out += s + "\n";
    return out;
  });
}

}  // extern "C"
