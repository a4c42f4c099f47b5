#pragma once
#include <string>

#include "ffchain/linalg.hpp"

namespace ffc {

// Two-qubit state; amplitude index is the bitstring |q1 q2>:
// a(0)=a00, a(1)=a01, a(2)=a10, a(3)=a11.
struct TwoQubitState {
  Eigen::Vector4cd a;
};

TwoQubitState make_state(cxd a00, cxd a01, cxd a10, cxd a11);
TwoQubitState make_state(const Eigen::Vector4cd& amps);

// 2x2 map built from the forbidden state:
//   [[ <psi|01>, <psi|11> ], [ -<psi|00>, -<psi|10> ]]
struct TransferMatrix {
  Eigen::Matrix2cd T;
  cxd mu1, mu2;                  // eigenvalues, |mu1| <= |mu2|
  Eigen::Vector2cd vec1, vec2;   // unit eigenvectors (vec2 unreliable when defective)
  bool defective = false;
  cxd overlap_c;                 // <vec1|vec2>
};
TransferMatrix transfer_matrix(const TwoQubitState& psi);

enum class PhaseKind { GaplessEqualModuli, GappedDistinctModuli, GappedCommuting };

struct PhaseVerdict {
  PhaseKind kind;
  cxd mu1, mu2;
  bool boundary = false;  // equality held only marginally within tolerance
  std::string detail;
};
// Spectral phase from the transfer-matrix eigenvalue moduli. Equal nonzero
// moduli => gapless; distinct moduli or both zero => gapped.
PhaseVerdict classify_phase(const TwoQubitState& psi, double tol = 1e-9);

const char* phase_kind_name(PhaseKind k);

// Local change of basis bringing the transfer matrix to
// [[alpha - i beta, delta], [0, -(alpha - i gamma)]] with real parameters,
// delta >= 0; the state loses its |00> component.
struct CanonicalForm {
  Eigen::Matrix2cd U;   // (U (x) U) psi = state
  TwoQubitState state;
  double alpha, beta, gamma, delta;
};
CanonicalForm canonical_form(const TwoQubitState& psi);

// State whose transfer matrix is the canonical triangular form above.
TwoQubitState from_canonical(double alpha, double beta, double gamma, double delta);

// (R(theta1) (x) R(theta2)) (sqrt(1-p)|00> + sign sqrt(p)|11>), planar rotations.
TwoQubitState real_family(double p, double theta1, double theta2, int sign);

// Closed-form gapless test for the real family; depends on dtheta = theta1 - theta2.
bool gapless_region_real(double p, double dtheta, int sign);

struct TpowResult {
  bool proportional;
  double off_rel;   // off-diagonal magnitude of T^n relative to its largest entry
  double diag_rel;  // diagonal mismatch, same scale
};
// Is T^n proportional to the identity? Eigendecomposition route when
// diagonalizable, repeated squaring when defective.
TpowResult tpow_prop_identity(const TwoQubitState& psi, int n, double tol = 1e-9);

struct SchmidtDecomp {
  double p0, p1;                    // weights, p0 >= p1, p0 + p1 = 1
  Eigen::Vector2cd w0, w1, v0, v1;  // psi = sqrt(p0) w0 (x) v0 + sqrt(p1) w1 (x) v1
  bool product;
};
SchmidtDecomp schmidt(const TwoQubitState& psi, double tol = 1e-12);

bool is_entangled(const TwoQubitState& psi, double tol = 1e-12);

TwoQubitState rotate(const Eigen::Matrix2cd& U, const TwoQubitState& psi);
TwoQubitState reconstruct_from_transfer(const Eigen::Matrix2cd& T);

TwoQubitState singlet_state();
TwoQubitState xxz_state(double q);  // |01> - q|10>, normalized

TwoQubitState random_two_qubit_state(std::uint64_t seed);
Eigen::Matrix2cd random_su2(std::uint64_t seed);

}  // namespace ffc
