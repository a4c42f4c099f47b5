#pragma once

#include <map>
#include <vector>

#include "ffchain/linalg.hpp"
#include "ffchain/states.hpp"

namespace ffc {

// Classification of chains built from rank-2 and rank-3 bond projectors.

struct ProjectorSpec {
  Matrix matrix;  // 4x4 Hermitian idempotent
  int rank = 0;   // 1, 2 or 3
};

// Strict mode checks idempotency. With reduce=true a PSD h is replaced by the
// projector onto its range (threshold 1e-8 relative to the top eigenvalue).
ProjectorSpec validate_projector(const Matrix& M, bool reduce = false);

struct Rank3Verdict {
  bool frustration_free = false;
  bool has_theta = false;
  Eigen::Vector2cd theta = Eigen::Vector2cd::Zero();  // null vector = theta (x) theta
};

Rank3Verdict classify_rank3(const ProjectorSpec& P);

// Five cases of the rank-2 taxonomy:
//   1: ground space span{alpha^n}
//   2: span{alpha^n, beta^n}
//   3: span of the two alternating products of alpha, beta
//   4: span{alpha^n, sum_i conj(f)^{i-1} |alpha^{i-1} alpha_perp alpha^{n-i}>}
//   5: frustrated (empty ground space for n >= 4)
struct Rank2Verdict {
  int case_id = 0;
  bool has_alpha = false, has_beta = false;
  Eigen::Vector2cd alpha = Eigen::Vector2cd::Zero();
  Eigen::Vector2cd beta = Eigen::Vector2cd::Zero();  // case 4: beta = alpha_perp
  cxd f = 0.0;                                       // case 4 only, nonzero there
  bool gapped = false;                               // cases 1-3 true, case 4 iff |f| != 1
  std::map<int, int> validated_nullity;              // numeric nullity of H_n, n=4 always present
};

Rank2Verdict classify_rank2(const ProjectorSpec& P);

struct GaplessBlock {
  Matrix block;             // Hamming-weight-1 block, n x n
  double smallest_nonzero;  // equals 1 - cos(pi/n)
};

// Requires |f| = 1 within 1e-10 and n >= 2.
GaplessBlock rank2_gapless_block(cxd f, int n);

// Spanning ground set for the classified chain on n qubits. Frustrated verdicts
// are rejected. When pi is given, each vector is checked to be annihilated by
// the chain Hamiltonian within 1e-9.
std::vector<Vector> rank2_groundspace(const Rank2Verdict& v, int n,
                                      const Matrix* pi = nullptr);

}  // namespace ffc
