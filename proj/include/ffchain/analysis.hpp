#pragma once
#include <limits>
#include <utility>
#include <vector>

#include "ffchain/spectral.hpp"

namespace ffc {

// Frame in which the transfer matrix is triangular with eigenvectors |0> and
// |v> = c|0> + s|1>, s > 0; W is the per-site unitary into that frame.
struct GaugeFrame {
  Eigen::Matrix2cd W;
  TwoQubitState psi_rot;
  Eigen::Vector2cd v, vperp;  // rotated-frame eigendirection and its complement
  cxd lambda = 0.0;           // mu2 / mu1, |lambda| > 1 (unset when mu1 = 0)
  bool mu1_zero = false;
  cxd c = 0.0;
  double s = 0.0;
};
// Requires distinct eigenvalue moduli (the gapped-distinct class or a
// non-symmetric product state); equal moduli or defective input is rejected.
GaugeFrame gauge_frame(const TwoQubitState& psi);

// Tr(G O) for O a product of single-site operators (sites 1-based, unique).
double ground_expectation(const ChainSpec& spec,
                          const std::vector<std::pair<int, Eigen::Matrix2cd>>& obs,
                          KernelMethod method = KernelMethod::automatic);

// Correlation functionals in the gauge frame of the bond state.
double tau_corr(const ChainSpec& spec, int i, int j);  // Tr(G |1><1|_i |v'><v'|_j)
double tau_end(const ChainSpec& spec);                 // Tr(G |v'><v'|_n)
double theta_corr(const ChainSpec& spec, int r);       // Tr(G I (x) |v><v|^r)
double xi_corr(const ChainSpec& spec, int r);          // v-run of length r, then v'

// Largest expectation of |1><1|_i (x) |v'><v'|_j over normalized ground states.
double sigma_max(const ChainSpec& spec, int i, int j);
// |lambda|^{-2(j-i)} s^2 / (1 - |c|); zero when mu1 = 0.
double sigma_bound(const TwoQubitState& psi, int i, int j);

struct MonotonicityReport {
  int n = 0;
  int dim_nm1 = 0, dim_nm2 = 0;
  double min_support_eig = 0.0;   // Tr_n(G_n) restricted to the support of G_{n-1}
  double off_support_norm = 0.0;  // mass of Tr_n(G_n) outside that support
  double rn_norm_def = 0.0;       // ||G_{n-1} Tr_n(G_n^perp) G_{n-1}||
  double rn_norm_formula = std::numeric_limits<double>::quiet_NaN();
  double rn_agreement = std::numeric_limits<double>::quiet_NaN();
  double m_identity_dev = std::numeric_limits<double>::quiet_NaN();  // sum M_z^H M_z vs I
  double m_lower_min = std::numeric_limits<double>::quiet_NaN();     // min eig sum M_z M_z^H
  double condition_number = 0.0;
  bool formula_skipped = false;  // last bond is a product state
  bool ill_conditioned = false;
};
// Partial-trace monotonicity data for the open chain over the given bonds
// (chain length = bonds + 1); closed-form cross-check in the ground bases.
MonotonicityReport monotonicity_check(const std::vector<TwoQubitState>& bonds);

// min nonzero eigenvalue of the site-n partial trace for randomly nested
// subspaces with ground-space-like dimensions; the monotonicity statement is
// specific to frustration-free structure, so random instances may dip below 1.
double random_subspace_partial_trace_min(int n, std::uint64_t seed);

// || G_ABC - G_AB G_BC || with C the last site, |B| = b_size.
double nachtergaele_overlap(const TwoQubitState& psi, int n, int b_size);

enum class ExclusionLemma { C1, C2, X1, X2 };
// Region-exclusion deviation norms in the gauge frame; `sizes` partitions the
// chain left to right (3 parts, or 4 for C2). Exact zeros for product bonds,
// resolved while the smallest nonzero chain eigenvalue stays above ~1e-12.
double region_exclusion(const TwoQubitState& psi, int n, ExclusionLemma which,
                        const std::vector<int>& sizes);

struct DecayFit {
  double rate = 0.0;           // v ~ exp(-rate * d)
  double log_prefactor = 0.0;
  double rms = 0.0;
};
DecayFit decay_fit(const std::vector<std::pair<int, double>>& points);

Matrix kron(const Matrix& A, const Matrix& B);
// operator on consecutive qubits [lo..hi] embedded into n qubits
Matrix embed_region(const Matrix& op, int n, int lo, int hi);
// rank-1 projector onto f^{(x) m}
Matrix product_projector(const Eigen::Vector2cd& f, int m);

}  // namespace ffc
