#pragma once
#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

#include "ffchain/errors.hpp"

namespace ffc {

using cxd = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

// y = A x; both preallocated to the same dimension
using LinOp = std::function<void(const Vector& x, Vector& y)>;

inline constexpr std::ptrdiff_t kDenseDimCap = 1 << 13;

struct EigResult {
  RVector values;  // ascending
  Matrix vectors;  // columns, orthonormal
};

// Full eigensystem of a Hermitian matrix. Rejects non-Hermitian input
// (relative deviation above herm_tol) and dimensions above kDenseDimCap.
EigResult eig_hermitian_dense(const Matrix& A, double herm_tol = 1e-10);

struct DeflatedResult {
  double value = 0.0;
  double residual = 0.0;  // ||A u - value u|| for the converged Ritz vector
  int iterations = 0;
};

// Smallest eigenvalue of a Hermitian PSD operator restricted to the orthogonal
// complement of `kernel` (orthonormal vectors annihilated by `apply`).
// Lanczos with explicit deflation; re-orthogonalizes against the kernel and the
// Krylov basis every step, thick-restarts when the basis hits its cap.
DeflatedResult smallest_nonzero_deflated(const LinOp& apply, std::ptrdiff_t dim,
                                         const std::vector<Vector>& kernel,
                                         double tol = 1e-8, std::uint64_t seed = 77);

// Partial trace over `traced_sites` (1-based qubit labels, qubit 1 = most
// significant bit) of a density-operator-sized matrix on n_qubits.
Matrix partial_trace(const Matrix& rho, int n_qubits, const std::vector<int>& traced_sites);

// Orthonormal basis of span(vecs) via SVD; directions with singular value
// below drop_tol * sigma_max are dropped.
std::vector<Vector> orthonormalize(const std::vector<Vector>& vecs, double drop_tol = 1e-8);

// Operator 2-norm (largest singular value) by power iteration on A^H A.
double op_two_norm(const LinOp& apply, const LinOp& apply_adjoint, std::ptrdiff_t dim,
                   double rel_tol = 1e-11, int max_iters = 20000, std::uint64_t seed = 99);

// Dense convenience wrapper around op_two_norm.
double two_norm_dense(const Matrix& A);

}  // namespace ffc
