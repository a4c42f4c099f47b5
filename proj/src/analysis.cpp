#include "ffchain/analysis.hpp"

#include <cmath>

#include "ffchain/rand.hpp"

namespace ffc {

namespace {

void require_plain_homogeneous(const ChainSpec& spec) {
  require(spec.boundary == Boundary::open && spec.homogeneous() && !spec.projector_override,
          errc::invalid_spec, "correlation analysis needs an open homogeneous rank-1 chain");
}

std::vector<Vector> basis_or_trivial(const std::vector<TwoQubitState>& bonds, int n) {
  // ground basis of the open chain on n qubits; n = 0 and n = 1 are free
  if (n == 0) return {Vector::Ones(1)};
  if (n == 1) return {Vector::Unit(2, 0), Vector::Unit(2, 1)};
  std::vector<TwoQubitState> prefix(bonds.begin(), bonds.begin() + (n - 1));
  return kernel_basis(make_chain_spec(n, Boundary::open, std::move(prefix)),
                      KernelMethod::numeric)
      .vectors;
}

}  // namespace

Matrix kron(const Matrix& A, const Matrix& B) {
  Matrix out(A.rows() * B.rows(), A.cols() * B.cols());
  for (std::ptrdiff_t i = 0; i < A.rows(); ++i)
    for (std::ptrdiff_t j = 0; j < A.cols(); ++j)
      out.block(i * B.rows(), j * B.cols(), B.rows(), B.cols()) = A(i, j) * B;
  return out;
}

Matrix embed_region(const Matrix& op, int n, int lo, int hi) {
  require(lo >= 1 && hi <= n && lo <= hi, errc::index_out_of_range, "region bounds");
  const std::ptrdiff_t dm = std::ptrdiff_t(1) << (hi - lo + 1);
  require(op.rows() == dm && op.cols() == dm, errc::dimension_mismatch, "region operator size");
  const std::ptrdiff_t dl = std::ptrdiff_t(1) << (lo - 1);
  const std::ptrdiff_t dr = std::ptrdiff_t(1) << (n - hi);
  Matrix out = op;
  if (dl > 1) out = kron(Matrix::Identity(dl, dl), out);
  if (dr > 1) out = kron(out, Matrix::Identity(dr, dr));
  return out;
}

Matrix product_projector(const Eigen::Vector2cd& f, int m) {
  std::vector<Eigen::Vector2cd> factors(std::size_t(m), f);
  Vector v = product_state_vector(factors);
  return v * v.adjoint();
}

GaugeFrame gauge_frame(const TwoQubitState& psi) {
  auto tm = transfer_matrix(psi);
  require(!tm.defective, errc::gauge_unavailable, "defective transfer matrix");
  const double scale = std::max(std::abs(tm.mu2), 1.0);
  require(std::abs(std::abs(tm.mu2) - std::abs(tm.mu1)) > 1e-9 * scale, errc::gauge_unavailable,
          "equal eigenvalue moduli: no preferred frame");
  require(std::abs(tm.mu2) > 1e-12, errc::gauge_unavailable, "transfer matrix is nilpotent");

  Eigen::Matrix2cd W;
  W << std::conj(tm.vec1(0)), std::conj(tm.vec1(1)), -tm.vec1(1), tm.vec1(0);
  Eigen::Vector2cd vr = W * tm.vec2;
  require(std::abs(vr(1)) > 1e-8, errc::gauge_unavailable,
          "transfer eigenvectors nearly parallel");
  const cxd ph = std::conj(vr(1)) / std::abs(vr(1));
  W.row(1) *= ph;
  vr(1) *= ph;

  GaugeFrame out;
  out.W = W;
  out.psi_rot = rotate(W, psi);
  out.c = vr(0);
  out.s = std::real(vr(1));
  out.v = Eigen::Vector2cd(out.c, out.s);
  out.vperp = Eigen::Vector2cd(out.s, -std::conj(out.c));
  out.mu1_zero = std::abs(tm.mu1) <= 1e-12 * scale;
  if (!out.mu1_zero) out.lambda = tm.mu2 / tm.mu1;
  return out;
}

double ground_expectation(const ChainSpec& spec,
                          const std::vector<std::pair<int, Eigen::Matrix2cd>>& obs,
                          KernelMethod method) {
  std::vector<bool> seen(std::size_t(spec.n) + 1, false);
  for (const auto& [site, M] : obs) {
    require(site >= 1 && site <= spec.n, errc::index_out_of_range, "observable site");
    require(!seen[std::size_t(site)], errc::site_collision,
            "two observables on site " + std::to_string(site));
    seen[std::size_t(site)] = true;
  }
  auto kb = kernel_basis(spec, method);
  double total = 0.0;
  for (const auto& g : kb.vectors) {
    Vector y = g;
    for (const auto& [site, M] : obs) y = apply_single_qubit(y, spec.n, site, M);
    total += std::real(g.dot(y));
  }
  return total;
}

namespace {

Eigen::Matrix2cd back_rotated_projector(const GaugeFrame& fr, const Eigen::Vector2cd& dir) {
  return fr.W.adjoint() * (dir * dir.adjoint()) * fr.W;
}

}  // namespace

double tau_corr(const ChainSpec& spec, int i, int j) {
  require_plain_homogeneous(spec);
  require(i >= 1 && j <= spec.n && i < j, errc::index_out_of_range, "site pair");
  auto fr = gauge_frame(spec.bonds[0]);
  Eigen::Matrix2cd P1 = back_rotated_projector(fr, Eigen::Vector2cd(0.0, 1.0));
  Eigen::Matrix2cd Pp = back_rotated_projector(fr, fr.vperp);
  return ground_expectation(spec, {{i, P1}, {j, Pp}});
}

double tau_end(const ChainSpec& spec) {
  require_plain_homogeneous(spec);
  auto fr = gauge_frame(spec.bonds[0]);
  return ground_expectation(spec, {{spec.n, back_rotated_projector(fr, fr.vperp)}});
}

double theta_corr(const ChainSpec& spec, int r) {
  require_plain_homogeneous(spec);
  require(r >= 0 && r <= spec.n, errc::parameter_out_of_range, "run length");
  auto fr = gauge_frame(spec.bonds[0]);
  Eigen::Matrix2cd Pv = back_rotated_projector(fr, fr.v);
  std::vector<std::pair<int, Eigen::Matrix2cd>> obs;
  for (int site = spec.n - r + 1; site <= spec.n; ++site) obs.emplace_back(site, Pv);
  return ground_expectation(spec, obs);
}

double xi_corr(const ChainSpec& spec, int r) {
  require_plain_homogeneous(spec);
  require(r >= 0 && r <= spec.n - 1, errc::parameter_out_of_range, "run length");
  auto fr = gauge_frame(spec.bonds[0]);
  Eigen::Matrix2cd Pv = back_rotated_projector(fr, fr.v);
  std::vector<std::pair<int, Eigen::Matrix2cd>> obs;
  for (int site = spec.n - r; site <= spec.n - 1; ++site) obs.emplace_back(site, Pv);
  obs.emplace_back(spec.n, back_rotated_projector(fr, fr.vperp));
  return ground_expectation(spec, obs);
}

double sigma_max(const ChainSpec& spec, int i, int j) {
  require_plain_homogeneous(spec);
  require(i >= 1 && j <= spec.n && i < j, errc::index_out_of_range, "site pair");
  auto fr = gauge_frame(spec.bonds[0]);
  Eigen::Matrix2cd P1 = back_rotated_projector(fr, Eigen::Vector2cd(0.0, 1.0));
  Eigen::Matrix2cd Pp = back_rotated_projector(fr, fr.vperp);
  auto kb = kernel_basis(spec, KernelMethod::automatic);
  const int k = int(kb.vectors.size());
  Matrix K(k, k);
  std::vector<Vector> imgs;
  for (const auto& g : kb.vectors) {
    Vector y = apply_single_qubit(g, spec.n, i, P1);
    y = apply_single_qubit(y, spec.n, j, Pp);
    imgs.push_back(std::move(y));
  }
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b) K(a, b) = kb.vectors[std::size_t(a)].dot(imgs[std::size_t(b)]);
  auto eig = eig_hermitian_dense(K, 1e-8);
  return std::max(0.0, eig.values(k - 1));
}

double sigma_bound(const TwoQubitState& psi, int i, int j) {
  require(i < j, errc::index_out_of_range, "site pair");
  auto fr = gauge_frame(psi);
  if (fr.mu1_zero) return 0.0;
  const double al = std::abs(fr.lambda);
  return std::pow(al, -2.0 * double(j - i)) * fr.s * fr.s / (1.0 - std::abs(fr.c));
}

MonotonicityReport monotonicity_check(const std::vector<TwoQubitState>& bonds) {
  const int n = int(bonds.size()) + 1;
  require(n >= 2, errc::invalid_spec, "need at least one bond");
  require(n <= 10, errc::dimension_too_large, "monotonicity check is dense-only");

  MonotonicityReport rep;
  rep.n = n;
  auto spec_n = make_chain_spec(n, Boundary::open, bonds);
  Matrix Gn = kernel_projector_dense(spec_n, KernelMethod::numeric);
  auto h_basis = basis_or_trivial(bonds, n - 1);
  auto g_basis = basis_or_trivial(bonds, n - 2);
  const int s = int(h_basis.size()), r = int(g_basis.size());
  rep.dim_nm1 = s;
  rep.dim_nm2 = r;

  const std::ptrdiff_t dh = std::ptrdiff_t(1) << (n - 1);
  Matrix H(dh, s);
  for (int i = 0; i < s; ++i) H.col(i) = h_basis[std::size_t(i)];
  Matrix Gnm1 = H * H.adjoint();

  Matrix tr = partial_trace(Gn, n, {n});
  Matrix on_support = H.adjoint() * tr * H;
  auto eig_sup = eig_hermitian_dense(on_support, 1e-8);
  rep.min_support_eig = eig_sup.values(0);
  Matrix off = (Matrix::Identity(dh, dh) - Gnm1) * tr * (Matrix::Identity(dh, dh) - Gnm1);
  rep.off_support_norm = two_norm_dense(off);

  Matrix tr_perp = partial_trace(Matrix::Identity(2 * dh, 2 * dh) - Gn, n, {n});
  Matrix R_def_h = H.adjoint() * tr_perp * H;
  rep.rn_norm_def = std::max(0.0, eig_hermitian_dense(R_def_h, 1e-8).values(s - 1));

  auto sd = schmidt(bonds[std::size_t(n - 2)]);
  if (sd.product) {
    rep.formula_skipped = true;
    return rep;
  }

  // overlap matrices between (G_{n-2} basis (x) Schmidt vector) and the G_{n-1} basis
  Matrix M0(r, s), M1(r, s);
  for (int al = 0; al < r; ++al) {
    const Vector& g = g_basis[std::size_t(al)];
    for (int z = 0; z < 2; ++z) {
      const Eigen::Vector2cd& w = z == 0 ? sd.w0 : sd.w1;
      Vector gw(g.size() * 2);
      for (std::ptrdiff_t b = 0; b < g.size(); ++b) {
        gw(2 * b) = g(b) * w(0);
        gw(2 * b + 1) = g(b) * w(1);
      }
      for (int i = 0; i < s; ++i)
        (z == 0 ? M0 : M1)(al, i) = gw.dot(h_basis[std::size_t(i)]);
    }
  }

  Matrix Ns = sd.p0 * M0 * M0.adjoint() + sd.p1 * M1 * M1.adjoint();
  auto eig_N = eig_hermitian_dense(Ns, 1e-8);
  rep.condition_number = eig_N.values(r - 1) / std::max(eig_N.values(0), 1e-300);
  rep.ill_conditioned = !(rep.condition_number < 1e10);
  Matrix Ninv = Ns.inverse();
  Matrix R_formula =
      sd.p0 * M0.adjoint() * Ninv * M0 + sd.p1 * M1.adjoint() * Ninv * M1;
  rep.rn_norm_formula = std::max(0.0, eig_hermitian_dense(R_formula, 1e-6).values(s - 1));
  rep.rn_agreement = two_norm_dense(R_def_h - R_formula);

  rep.m_identity_dev =
      two_norm_dense(M0.adjoint() * M0 + M1.adjoint() * M1 - Matrix::Identity(s, s));
  rep.m_lower_min = eig_hermitian_dense(M0 * M0.adjoint() + M1 * M1.adjoint(), 1e-8).values(0);
  return rep;
}

double random_subspace_partial_trace_min(int n, std::uint64_t seed) {
  require(n >= 2 && n <= 8, errc::parameter_out_of_range, "guard instance size");
  const std::ptrdiff_t dh = std::ptrdiff_t(1) << (n - 1);
  const int s = n, D = n + 1;  // ground-space-like dimensions
  Matrix U = random_unitary(dh, seed);
  Matrix H = U.leftCols(s);

  // random D-dim subspace of span{h_i (x) e_z}
  Matrix C = random_unitary(2 * s, seed ^ 0x9e3779b97f4a7c15ULL).leftCols(D);
  Matrix Gn = Matrix::Zero(2 * dh, 2 * dh);
  Matrix cols(2 * dh, D);
  for (int d = 0; d < D; ++d) {
    Vector w = Vector::Zero(2 * dh);
    for (int i = 0; i < s; ++i)
      for (int z = 0; z < 2; ++z)
        for (std::ptrdiff_t b = 0; b < dh; ++b)
          w(2 * b + z) += C(2 * i + z, d) * H(b, i);
    cols.col(d) = w;
  }
  Gn = cols * cols.adjoint();
  Matrix tr = partial_trace(Gn, n, {n});
  auto eig = eig_hermitian_dense(tr, 1e-8);
  double min_nonzero = std::numeric_limits<double>::infinity();
  for (std::ptrdiff_t i = 0; i < eig.values.size(); ++i)
    if (eig.values(i) > 1e-6) min_nonzero = std::min(min_nonzero, eig.values(i));
  return min_nonzero;
}

double nachtergaele_overlap(const TwoQubitState& psi, int n, int b_size) {
  require(b_size >= 1 && n >= b_size + 2, errc::partition_invalid,
          "need nonempty left block, middle block, and one right site");
  require(n <= 10, errc::dimension_too_large, "overlap norm is dense-only");
  auto spec = make_chain_spec(n, Boundary::open, {psi});
  Matrix G_abc = kernel_projector_dense(spec, KernelMethod::numeric);
  Matrix G_ab = embed_region(
      kernel_projector_dense(restrict_region_spec(spec, 1, n - 1), KernelMethod::numeric), n, 1,
      n - 1);
  Matrix G_bc = embed_region(
      kernel_projector_dense(restrict_region_spec(spec, n - b_size, n), KernelMethod::numeric),
      n, n - b_size, n);
  return two_norm_dense(G_abc - G_ab * G_bc);
}

double region_exclusion(const TwoQubitState& psi, int n, ExclusionLemma which,
                        const std::vector<int>& sizes) {
  require(n >= 2 && n <= 10, errc::dimension_too_large, "exclusion norms are dense-only");
  const std::size_t want = which == ExclusionLemma::C2 ? 4 : 3;
  require(sizes.size() == want, errc::partition_invalid, "wrong number of region sizes");
  int total = 0;
  for (int x : sizes) {
    require(x >= 0, errc::partition_invalid, "negative region size");
    total += x;
  }
  require(total == n, errc::partition_invalid, "region sizes must cover the chain");

  auto fr = gauge_frame(psi);
  auto spec = make_chain_spec(n, Boundary::open, {fr.psi_rot});
  const std::ptrdiff_t dim = std::ptrdiff_t(1) << n;
  const Eigen::Vector2cd zero(1.0, 0.0);

  // True kernel eigenvalues sit at machine zero; a loose cut would sweep up
  // physical near-zero modes of barely non-symmetric bonds and wreck the
  // identities by O(1), so separate the two aggressively.
  const double kcut = 1e-12;
  // projector onto the chain ground space of the consecutive region [lo..hi]
  auto G = [&](int lo, int hi) -> Matrix {
    if (lo > hi) return Matrix::Ones(1, 1);
    if (lo == hi) return Matrix::Identity(2, 2);
    return kernel_projector_dense(restrict_region_spec(spec, lo, hi), KernelMethod::numeric, kcut);
  };
  auto vproj = [&](const Eigen::Vector2cd& f, int m) -> Matrix {
    if (m == 0) return Matrix::Ones(1, 1);
    return product_projector(f, m);
  };

  if (which == ExclusionLemma::C1) {
    const int a = sizes[0], b = sizes[1], c = sizes[2];
    require(b >= 1, errc::partition_invalid, "middle region must be nonempty");
    Matrix P = kernel_projector_dense(spec, KernelMethod::numeric, kcut);
    Matrix Q = embed_region(G(1, a + b), n, 1, a + b);
    Matrix V = a == 0 ? vproj(fr.v, n) : embed_region(vproj(fr.v, b + c), n, a + 1, n);
    return two_norm_dense((P - Q) * V);
  }
  if (which == ExclusionLemma::C2) {
    const int a = sizes[0], b = sizes[1], c = sizes[2], d = sizes[3];
    require(b >= 1 && c >= 1, errc::partition_invalid, "B and C must be nonempty");
    Matrix P = kernel_projector_dense(spec, KernelMethod::numeric, kcut);
    Matrix Q = kron(vproj(zero, a), G(a + 1, n));
    Matrix Vc = embed_region(vproj(fr.v, c), n, a + b + 1, a + b + c);
    Matrix Vperp = Matrix::Identity(dim, dim) - Vc;
    return two_norm_dense((P - Q) * Vperp);
  }
  const int a = sizes[0], b = sizes[1], c = sizes[2];
  require(a >= 1 && b >= 1 && c >= 1, errc::partition_invalid, "all three regions nonempty");
  Matrix G_abc = kernel_projector_dense(spec, KernelMethod::numeric, kcut);
  if (which == ExclusionLemma::X1) {
    Matrix G_ab_vc = kron(embed_region(G(1, a + b), a + b, 1, a + b), vproj(fr.v, c));
    Matrix lhs = G_ab_vc - G_abc;
    Matrix G_b_vc = kron(G(a + 1, a + b), vproj(fr.v, c));
    Matrix G_bc = G(a + 1, n);
    Matrix rhs = kron(vproj(zero, a), G_b_vc - G_bc);
    return two_norm_dense(lhs - rhs);
  }
  // X2
  Matrix G_a_bc = kron(vproj(zero, a), G(a + 1, n));
  Matrix lhs = G_a_bc - G_abc;
  Matrix G_a_b = kron(vproj(zero, a), G(a + 1, a + b));
  Matrix G_ab = G(1, a + b);
  Matrix rhs = kron(G_a_b - G_ab, vproj(fr.v, c));
  return two_norm_dense(lhs - rhs);
}

DecayFit decay_fit(const std::vector<std::pair<int, double>>& points) {
  require(points.size() >= 3, errc::invalid_argument, "need at least three distances");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& [d, v] : points) {
    require(v > 0.0, errc::non_positive_value,
            "cannot fit a decay rate through a non-positive value");
    sx += d;
    sy += std::log(v);
    sxx += double(d) * d;
    sxy += d * std::log(v);
  }
  const double m = double(points.size());
  const double denom = m * sxx - sx * sx;
  require(std::abs(denom) > 1e-12, errc::invalid_argument, "degenerate abscissas");
  const double slope = (m * sxy - sx * sy) / denom;
  DecayFit fit;
  fit.rate = -slope;
  fit.log_prefactor = (sy - slope * sx) / m;
  double ss = 0;
  for (const auto& [d, v] : points) {
    double e = std::log(v) - (fit.log_prefactor + slope * d);
    ss += e * e;
  }
  fit.rms = std::sqrt(ss / m);
  return fit;
}

}  // namespace ffc
