#pragma once
#include <optional>
#include <vector>

#include "ffchain/states.hpp"

namespace ffc {

enum class Boundary { open, periodic };

const char* boundary_name(Boundary b);

// Chain of n qubits with nearest-neighbor projector terms. Bonds carry either
// rank-1 projectors onto per-bond forbidden states (one state = homogeneous,
// n-1 states = inhomogeneous, open only) or a single rank-1..3 override
// projector repeated on every bond.
struct ChainSpec {
  int n = 0;
  Boundary boundary = Boundary::open;
  std::vector<TwoQubitState> bonds;
  std::optional<Eigen::Matrix4cd> projector_override;

  bool homogeneous() const { return bonds.size() == 1; }
  // 1-based bond index; bond i couples qubits (i, i%n + 1)
  const TwoQubitState& bond_state(int i) const;
  Eigen::Matrix4cd bond_projector(int i) const;
  int bond_count() const;
};

ChainSpec make_chain_spec(int n, Boundary b, std::vector<TwoQubitState> bonds,
                          std::optional<Eigen::Matrix4cd> projector = {});

struct BondTerm {
  int i, j;             // qubit pair, j = i%n + 1
  Eigen::Matrix4cd h;   // term on |q_i q_j>
};

class ChainOperator {
public:
  ChainOperator(int n, std::vector<BondTerm> terms);

  int n() const { return n_; }
  std::ptrdiff_t dim() const { return std::ptrdiff_t(1) << n_; }
  const std::vector<BondTerm>& terms() const { return terms_; }

  void apply(const Vector& x, Vector& y) const;
  LinOp linop() const;
  // direct index-arithmetic materialization, kept independent of apply()
  Matrix dense() const;

private:
  int n_;
  std::vector<BondTerm> terms_;
};

ChainOperator build_chain(const ChainSpec& spec);

// Sub-chain on consecutive qubits [lo, hi] of an open spec; keeps the interior
// bonds only. A single-site region yields the zero operator.
ChainOperator restrict_region(const ChainSpec& spec, int lo, int hi);
ChainSpec restrict_region_spec(const ChainSpec& spec, int lo, int hi);

}  // namespace ffc
