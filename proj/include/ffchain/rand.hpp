#pragma once
#include <cstdint>
#include <random>

#include "ffchain/linalg.hpp"

namespace ffc {

// Deterministic streams: explicit Box-Muller on mt19937_64 output, so the same
// seed reproduces the same numbers on any conforming toolchain.
struct Rng {
  std::mt19937_64 eng;
  explicit Rng(std::uint64_t seed) : eng(seed) {}
  double u01() { return (double(eng() >> 11) + 0.5) * (1.0 / 9007199254740992.0); }
  double gauss() {
    double r = std::sqrt(-2.0 * std::log(u01()));
    return r * std::cos(2.0 * M_PI * u01());
  }
  cxd cgauss() {
    double r = std::sqrt(-2.0 * std::log(u01()));
    double t = 2.0 * M_PI * u01();
    return {r * std::cos(t), r * std::sin(t)};
  }
};

inline Vector random_vector(std::ptrdiff_t dim, std::uint64_t seed) {
  Rng rng(seed);
  Vector v(dim);
  for (std::ptrdiff_t i = 0; i < dim; ++i) v(i) = rng.cgauss();
  return v;
}

inline Vector random_unit_vector(std::ptrdiff_t dim, std::uint64_t seed) {
  Vector v = random_vector(dim, seed);
  return v / v.norm();
}

// Haar-distributed unitary: QR of a Gaussian matrix with the R-diagonal phase fix
inline Matrix random_unitary(std::ptrdiff_t dim, std::uint64_t seed) {
  Rng rng(seed);
  Matrix Z(dim, dim);
  for (std::ptrdiff_t j = 0; j < dim; ++j)
    for (std::ptrdiff_t i = 0; i < dim; ++i) Z(i, j) = rng.cgauss();
  Eigen::HouseholderQR<Matrix> qr(Z);
  Matrix Q = qr.householderQ() * Matrix::Identity(dim, dim);
  Matrix R = qr.matrixQR().triangularView<Eigen::Upper>();
  for (std::ptrdiff_t i = 0; i < dim; ++i) {
    cxd d = R(i, i);
    Q.col(i) *= (std::abs(d) > 0) ? d / std::abs(d) : cxd(1.0);
  }
  return Q;
}

}  // namespace ffc
