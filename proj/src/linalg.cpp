#include "ffchain/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace ffc {

namespace {

Vector seeded_gaussian(std::ptrdiff_t dim, std::uint64_t seed) {
  // explicit Box-Muller on mt19937_64 so streams are reproducible across toolchains
  std::mt19937_64 rng(seed);
  auto u01 = [&rng]() {
    return (double(rng() >> 11) + 0.5) * (1.0 / 9007199254740992.0);
  };
  Vector v(dim);
  for (std::ptrdiff_t i = 0; i < dim; ++i) {
    double r = std::sqrt(-2.0 * std::log(u01()));
    double t = 2.0 * M_PI * u01();
    v(i) = cxd(r * std::cos(t), r * std::sin(t));
  }
  return v;
}

}  // namespace

EigResult eig_hermitian_dense(const Matrix& A, double herm_tol) {
  require(A.rows() == A.cols(), errc::dimension_mismatch, "matrix not square");
  require(A.rows() <= kDenseDimCap, errc::dimension_too_large,
          "dense eigensolve capped at dim " + std::to_string(kDenseDimCap));
  double scale = std::max(1.0, A.cwiseAbs().maxCoeff());
  double dev = (A - A.adjoint()).cwiseAbs().maxCoeff();
  require(dev <= herm_tol * scale, errc::non_hermitian,
          "matrix deviates from Hermitian by " + std::to_string(dev));
  Eigen::SelfAdjointEigenSolver<Matrix> es((A + A.adjoint()) / 2.0);
  require(es.info() == Eigen::Success, errc::no_convergence, "dense eigensolver failed");
  return {es.eigenvalues(), es.eigenvectors()};
}

DeflatedResult smallest_nonzero_deflated(const LinOp& apply, std::ptrdiff_t dim,
                                         const std::vector<Vector>& kernel, double tol,
                                         std::uint64_t seed) {
  require(dim > 0, errc::invalid_argument, "empty operator");
  const std::ptrdiff_t k = std::ptrdiff_t(kernel.size());
  require(k < dim, errc::invalid_argument, "kernel spans the whole space");

  Vector tmp(dim);
  for (std::ptrdiff_t i = 0; i < k; ++i) {
    require(kernel[i].size() == dim, errc::dimension_mismatch, "kernel vector dimension");
    require(std::abs(kernel[i].norm() - 1.0) <= 1e-8, errc::invalid_argument,
            "kernel vector not normalized");
    for (std::ptrdiff_t j = 0; j < i; ++j)
      require(std::abs(kernel[j].dot(kernel[i])) <= 1e-8, errc::invalid_argument,
              "kernel vectors not orthogonal");
    apply(kernel[i], tmp);
    require(tmp.norm() <= 10.0 * tol, errc::kernel_not_annihilated,
            "kernel vector has residual " + std::to_string(tmp.norm()));
  }

  auto deflate = [&](Vector& v) {
    for (int pass = 0; pass < 2; ++pass)
      for (std::ptrdiff_t i = 0; i < k; ++i) v -= kernel[i].dot(v) * kernel[i];
  };

  const std::ptrdiff_t m_cap =
      std::min<std::ptrdiff_t>(dim - k, std::max<std::ptrdiff_t>(80, 2 * (k + 1) + 40));
  const std::ptrdiff_t keep = 8;
  const int max_restarts = 80;

  std::vector<Vector> V;
  V.reserve(std::size_t(m_cap));
  Matrix T = Matrix::Zero(m_cap, m_cap);

  Vector v0 = seeded_gaussian(dim, seed);
  deflate(v0);
  require(v0.norm() > 1e-12, errc::internal, "start vector vanished under deflation");
  V.push_back(v0 / v0.norm());

  double theta_max = 0.0;
  DeflatedResult best;
  best.value = std::numeric_limits<double>::quiet_NaN();
  int total_iters = 0;
  std::uint64_t reseed = seed;

  auto fresh_direction = [&](Vector& w) {
    w = seeded_gaussian(dim, ++reseed);
    deflate(w);
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& b : V) w -= b.dot(w) * b;
  };

  // fill_column computes T(:,j) = V^H A v_j and returns the orthogonalized remainder
  auto fill_column = [&](std::ptrdiff_t j, Vector& w) {
    apply(V[std::size_t(j)], w);
    ++total_iters;
    deflate(w);
    for (std::ptrdiff_t i = 0; i <= j; ++i) {
      cxd h = V[std::size_t(i)].dot(w);
      T(i, j) = (i == j) ? cxd(std::real(h), 0.0) : h;
      T(j, i) = std::conj(T(i, j));
      w -= h * V[std::size_t(i)];
    }
    for (std::ptrdiff_t i = 0; i <= j; ++i) w -= V[std::size_t(i)].dot(w) * V[std::size_t(i)];
    deflate(w);
  };

  for (int restart = 0; restart <= max_restarts; ++restart) {
    Vector w(dim);
    bool exhausted = false;
    for (;;) {
      const std::ptrdiff_t j = std::ptrdiff_t(V.size()) - 1;
      fill_column(j, w);
      if (j + 1 >= m_cap) break;
      double beta = w.norm();
      if (beta <= 1e-13 * std::max(1.0, theta_max)) {
        // invariant subspace found; widen with a fresh direction (exact block split)
        fresh_direction(w);
        beta = w.norm();
        if (beta <= 1e-12) { exhausted = true; break; }
        V.push_back(w / beta);
        continue;
      }
      T(j + 1, j) = beta;
      T(j, j + 1) = beta;
      V.push_back(w / beta);
    }

    const std::ptrdiff_t m = std::ptrdiff_t(V.size());
    Eigen::SelfAdjointEigenSolver<Matrix> es(T.topLeftCorner(m, m));
    RVector theta = es.eigenvalues();
    theta_max = std::max(theta_max, theta(m - 1));

    Vector u = Vector::Zero(dim);
    for (std::ptrdiff_t i = 0; i < m; ++i) u += es.eigenvectors()(i, 0) * V[std::size_t(i)];
    u /= u.norm();
    apply(u, tmp);
    double res = (tmp - theta(0) * u).norm();
    best.value = theta(0);
    best.residual = res;
    best.iterations = total_iters;
    if (exhausted || res <= tol * std::max(1.0, theta_max)) return best;

    // thick restart: keep the lowest Ritz vectors, re-anchor T on them
    const std::ptrdiff_t r = std::min(keep, m - 1);
    std::vector<Vector> U;
    U.reserve(std::size_t(r) + 1);
    for (std::ptrdiff_t c = 0; c < r; ++c) {
      Vector uc = Vector::Zero(dim);
      for (std::ptrdiff_t i = 0; i < m; ++i) uc += es.eigenvectors()(i, c) * V[std::size_t(i)];
      deflate(uc);
      for (const auto& b : U) uc -= b.dot(uc) * b;
      double nn = uc.norm();
      if (nn > 1e-12) U.push_back(uc / nn);
    }
    // continue with the current Lanczos remainder; a random direction here
    // loses the accumulated momentum and stalls on large spaces
    Vector cont = w;
    deflate(cont);
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& b : U) cont -= b.dot(cont) * b;
    V = std::move(U);
    T.setZero();
    Vector scratch(dim);
    for (std::ptrdiff_t c = 0; c < std::ptrdiff_t(V.size()); ++c) fill_column(c, scratch);
    const double cn = cont.norm();
    if (cn > 1e-10 * std::max(1.0, theta_max)) {
      V.push_back(cont / cn);
    } else {
      Vector vn(dim);
      fresh_direction(vn);
      if (vn.norm() <= 1e-12) return best;
      V.push_back(vn / vn.norm());
    }
  }
  fail(errc::no_convergence,
       "deflated Lanczos stalled at residual " + std::to_string(best.residual));
}

Matrix partial_trace(const Matrix& rho, int n_qubits, const std::vector<int>& traced_sites) {
  require(n_qubits >= 1 && n_qubits <= 26, errc::dimension_too_large, "qubit count");
  const std::ptrdiff_t dim = std::ptrdiff_t(1) << n_qubits;
  require(rho.rows() == dim && rho.cols() == dim, errc::dimension_mismatch,
          "density matrix dimension does not match qubit count");
  std::vector<bool> traced(std::size_t(n_qubits) + 1, false);
  for (int s : traced_sites) {
    require(s >= 1 && s <= n_qubits, errc::index_out_of_range, "traced site out of range");
    require(!traced[std::size_t(s)], errc::invalid_argument, "traced site repeated");
    traced[std::size_t(s)] = true;
  }
  std::vector<int> keep_bits, trace_bits;  // bit positions, qubit q -> bit n-q
  for (int q = 1; q <= n_qubits; ++q)
    (traced[std::size_t(q)] ? trace_bits : keep_bits).push_back(n_qubits - q);

  const std::ptrdiff_t dk = std::ptrdiff_t(1) << keep_bits.size();
  const std::ptrdiff_t dt = std::ptrdiff_t(1) << trace_bits.size();
  auto embed = [](const std::vector<int>& bits, std::ptrdiff_t x) {
    std::ptrdiff_t out = 0;
    for (std::size_t i = 0; i < bits.size(); ++i)
      if (x & (std::ptrdiff_t(1) << (bits.size() - 1 - i))) out |= std::ptrdiff_t(1) << bits[i];
    return out;
  };
  std::vector<std::ptrdiff_t> kmap(static_cast<std::size_t>(dk));
  std::vector<std::ptrdiff_t> tmap(static_cast<std::size_t>(dt));
  for (std::ptrdiff_t x = 0; x < dk; ++x) kmap[std::size_t(x)] = embed(keep_bits, x);
  for (std::ptrdiff_t x = 0; x < dt; ++x) tmap[std::size_t(x)] = embed(trace_bits, x);

  Matrix out = Matrix::Zero(dk, dk);
  for (std::ptrdiff_t r = 0; r < dk; ++r)
    for (std::ptrdiff_t c = 0; c < dk; ++c) {
      cxd acc = 0.0;
      for (std::ptrdiff_t t = 0; t < dt; ++t)
        acc += rho(kmap[std::size_t(r)] | tmap[std::size_t(t)],
                   kmap[std::size_t(c)] | tmap[std::size_t(t)]);
      out(r, c) = acc;
    }
  return out;
}

std::vector<Vector> orthonormalize(const std::vector<Vector>& vecs, double drop_tol) {
  if (vecs.empty()) return {};
  const std::ptrdiff_t dim = vecs[0].size();
  Matrix M(dim, std::ptrdiff_t(vecs.size()));
  for (std::size_t i = 0; i < vecs.size(); ++i) {
    require(vecs[i].size() == dim, errc::dimension_mismatch, "mixed vector dimensions");
    double nn = vecs[i].norm();
    M.col(std::ptrdiff_t(i)) = nn > 0 ? Vector(vecs[i] / nn) : vecs[i];
  }
  Eigen::BDCSVD<Matrix> svd(M, Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) <= 0) return {};
  std::vector<Vector> out;
  for (std::ptrdiff_t i = 0; i < sv.size(); ++i)
    if (sv(i) > drop_tol * sv(0)) out.push_back(svd.matrixU().col(i));
  return out;
}

double op_two_norm(const LinOp& apply, const LinOp& apply_adjoint, std::ptrdiff_t dim,
                   double rel_tol, int max_iters, std::uint64_t seed) {
  require(dim > 0, errc::invalid_argument, "empty operator");
  double global = 0.0;
  Vector w(dim), u(dim);
  for (int trial = 0; trial < 3; ++trial) {
    Vector v = seeded_gaussian(dim, seed + std::uint64_t(trial));
    v /= v.norm();
    double sigma = 0.0, prev = -1.0;
    bool converged = false;
    for (int it = 0; it < max_iters; ++it) {
      apply(v, w);
      sigma = w.norm();
      if (sigma <= 1e-200) { converged = true; break; }
      apply_adjoint(w, u);
      double un = u.norm();
      if (un <= 1e-200) { converged = true; break; }
      v = u / un;
      if (it > 0 && std::abs(sigma - prev) <= rel_tol * std::max(sigma, 1e-30)) {
        converged = true;
        break;
      }
      prev = sigma;
    }
    require(converged, errc::no_convergence, "power iteration stalled");
    global = std::max(global, sigma);
  }
  return global;
}

double two_norm_dense(const Matrix& A) {
  require(A.rows() == A.cols(), errc::dimension_mismatch, "two_norm_dense expects square");
  if (A.rows() == 0) return 0.0;
  LinOp fwd = [&A](const Vector& x, Vector& y) { y = A * x; };
  LinOp adj = [&A](const Vector& x, Vector& y) { y = A.adjoint() * x; };
  return op_two_norm(fwd, adj, A.rows(), 1e-12, 50000, 7);
}

}  // namespace ffc
