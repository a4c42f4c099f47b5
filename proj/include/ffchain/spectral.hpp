#pragma once
#include <cstdint>
#include <vector>

#include "ffchain/groundspace.hpp"

namespace ffc {

enum class GapMethod { automatic, dense, deflated };

struct GapResult {
  double gap = 0.0;
  int n = 0;
  Boundary boundary = Boundary::open;
  std::string method;  // dense | deflated
  int kernel_dim = 0;
  double residual = 0.0;
};

// Smallest nonzero eigenvalue. Dense full spectrum up to 2^10 by default
// (hard cap 2^13); deflated Lanczos above, seeded with the kernel basis.
GapResult spectral_gap(const ChainSpec& spec, GapMethod method = GapMethod::automatic,
                       double tol = 1e-8);

// First k eigenvalues (ascending) from the dense spectrum.
RVector eigenvalues_lowest(const ChainSpec& spec, int k);

struct KnabeResult {
  double gap_open_n, gap_periodic_m;
  double lhs, rhs;  // lhs = periodic gap at m, rhs = scaled open-gap expression
  bool holds;
};
// Finite-size criterion: periodic gap at size m against the threshold built
// from the open gap at size n, for m >= n > 2.
KnabeResult knabe_check(const TwoQubitState& psi, int n, int m, double slack = 1e-9);

struct WeylResult {
  double max_dev_open, max_dev_periodic;
  double bound;  // 2 n ||psi - phi||
  bool holds;
};
// Eigenvalue stability of the full spectrum under a bond-state perturbation.
WeylResult weyl_check(const TwoQubitState& psi, const TwoQubitState& phi, int n,
                      double slack = 1e-9);

struct Convergent {
  long long p = 0, q = 1;
  double value = 0.0;
  bool exact = false;  // expansion terminated here
};
// Continued-fraction approximations of theta > 0 with strictly increasing
// denominators q >= 2, each within 1/q^2; rational inputs end exactly.
std::vector<Convergent> convergents(double theta, int count);

struct WitnessEntry {
  int n;
  double gap, bound;
  bool satisfied;
};
struct WitnessReport {
  std::vector<WitnessEntry> entries;
  bool all_satisfied = true;
};
// Checks gap <= 1/(n-1) at each size for a state classified gapless.
WitnessReport gapless_witness(const TwoQubitState& psi, const std::vector<int>& sizes,
                              double slack = 1e-9);

}  // namespace ffc
