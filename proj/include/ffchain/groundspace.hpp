#pragma once
#include <string>
#include <vector>

#include "ffchain/chain.hpp"

namespace ffc {

// Dicke states: orthonormal basis of the symmetric subspace, dimension n+1.
std::vector<Vector> symmetric_basis(int n);

// single-qubit operator on one site of an n-qubit vector
Vector apply_single_qubit(const Vector& x, int n, int site, const Eigen::Matrix2cd& M);

// product state from per-site factors (site 1 first = most significant)
Vector product_state_vector(const std::vector<Eigen::Vector2cd>& factors);

enum class KernelMethod { automatic, analytic, numeric };

struct KernelBasis {
  std::vector<Vector> vectors;  // orthonormal
  std::string origin;           // analytic-entangled | analytic-product | numeric | trivial
  double residual = 0.0;        // max ||H g|| over the returned basis
};

// Orthonormal ground-space basis. Analytic route: image of the symmetric
// subspace under site-wise transfer-matrix powers (entangled bond), or the
// domain-wall product basis (product bond); open homogeneous chains only.
// Numeric route: dense null space, n <= 12.
KernelBasis kernel_basis(const ChainSpec& spec, KernelMethod method = KernelMethod::automatic,
                         double tol = 1e-8);

struct DegeneracyResult {
  int dim;
  std::string branch;  // which rule produced the count
};
DegeneracyResult degeneracy(const ChainSpec& spec);

// y = (G_[lo..hi] (x) I) x on the full chain
Vector region_projector_apply(const ChainSpec& spec, int lo, int hi, const Vector& x,
                              KernelMethod method = KernelMethod::automatic);
KernelBasis region_kernel(const ChainSpec& spec, int lo, int hi,
                          KernelMethod method = KernelMethod::automatic);

// Ground-space dimensions D_1..D_n_max of prefix chains (D_1 = 2 by convention).
// One bond state = homogeneous; otherwise bonds[i] is the (i+1)-th bond.
std::vector<int> dimension_sequence(const std::vector<TwoQubitState>& bonds, int n_max);

Matrix kernel_projector_dense(const ChainSpec& spec,
                              KernelMethod method = KernelMethod::automatic, double tol = 1e-8);

}  // namespace ffc
