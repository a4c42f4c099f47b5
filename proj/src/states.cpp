#include "ffchain/states.hpp"

#include <cmath>
#include <sstream>

#include "ffchain/rand.hpp"

namespace ffc {

namespace {

std::string fmt_c(cxd z) {
  std::ostringstream os;
  os.precision(12);
  os << "(" << std::real(z) << ", " << std::imag(z) << ")";
  return os.str();
}

Eigen::Vector2cd unit_phase_fixed(Eigen::Vector2cd v) {
  v.normalize();
  int lead = std::abs(v(0)) >= std::abs(v(1)) ? 0 : 1;
  cxd ph = v(lead) / std::abs(v(lead));
  return v / ph;
}

}  // namespace

TwoQubitState make_state(const Eigen::Vector4cd& amps) {
  double nn = amps.norm();
  require(nn > 1e-14, errc::zero_vector, "state amplitudes all zero");
  return {amps / nn};
}

TwoQubitState make_state(cxd a00, cxd a01, cxd a10, cxd a11) {
  Eigen::Vector4cd v;
  v << a00, a01, a10, a11;
  return make_state(v);
}

TransferMatrix transfer_matrix(const TwoQubitState& psi) {
  TransferMatrix out;
  const auto& a = psi.a;
  out.T << std::conj(a(1)), std::conj(a(3)), -std::conj(a(0)), -std::conj(a(2));

  const cxd tr = out.T(0, 0) + out.T(1, 1);
  const cxd det = out.T(0, 0) * out.T(1, 1) - out.T(0, 1) * out.T(1, 0);
  const cxd disc = std::sqrt(tr * tr - 4.0 * det);
  cxd m1 = (tr + disc) / 2.0, m2 = (tr - disc) / 2.0;
  if (std::abs(m1) > std::abs(m2)) std::swap(m1, m2);
  out.mu1 = m1;
  out.mu2 = m2;

  const double scale = std::max(1.0, out.T.cwiseAbs().maxCoeff());
  const Eigen::Matrix2cd dev = out.T - (tr / 2.0) * Eigen::Matrix2cd::Identity();
  out.defective = std::abs(m1 - m2) <= 1e-9 * scale && dev.cwiseAbs().maxCoeff() > 1e-9 * scale;

  auto eigvec = [&](cxd mu) -> Eigen::Vector2cd {
    Eigen::Vector2cd v1(out.T(0, 1), mu - out.T(0, 0));
    Eigen::Vector2cd v2(mu - out.T(1, 1), out.T(1, 0));
    Eigen::Vector2cd v = v1.norm() >= v2.norm() ? v1 : v2;
    if (v.norm() <= 1e-14 * scale) return Eigen::Vector2cd(1.0, 0.0);
    return unit_phase_fixed(v);
  };
  if (dev.cwiseAbs().maxCoeff() <= 1e-14 * scale) {
    // scalar matrix: fix the eigenbasis to the computational one
    out.vec1 = Eigen::Vector2cd(1.0, 0.0);
    out.vec2 = Eigen::Vector2cd(0.0, 1.0);
  } else {
    out.vec1 = eigvec(out.mu1);
    out.vec2 = out.defective ? out.vec1 : eigvec(out.mu2);
  }
  out.overlap_c = out.vec1.dot(out.vec2);
  return out;
}

const char* phase_kind_name(PhaseKind k) {
  switch (k) {
    case PhaseKind::GaplessEqualModuli: return "GaplessEqualModuli";
    case PhaseKind::GappedDistinctModuli: return "GappedDistinctModuli";
    case PhaseKind::GappedCommuting: return "GappedCommuting";
  }
  return "?";
}

PhaseVerdict classify_phase(const TwoQubitState& psi, double tol) {
  auto tm = transfer_matrix(psi);
  PhaseVerdict v;
  v.mu1 = tm.mu1;
  v.mu2 = tm.mu2;
  const double m1 = std::abs(tm.mu1), m2 = std::abs(tm.mu2);
  const double diff = (m2 - m1) / std::max(m2, 1.0);
  std::ostringstream os;
  os.precision(12);
  os << "transfer eigenvalues " << fmt_c(tm.mu1) << ", " << fmt_c(tm.mu2);
  if (m2 <= tol) {
    v.kind = PhaseKind::GappedCommuting;
    os << "; both zero: commuting projector chain, gap >= 1";
  } else if (diff <= tol) {
    v.kind = PhaseKind::GaplessEqualModuli;
    v.boundary = diff > tol / 10.0;
    os << "; equal moduli";
    if (v.boundary) os << " (marginal, |difference| within tolerance of the cut)";
  } else {
    v.kind = PhaseKind::GappedDistinctModuli;
    os << "; distinct moduli, ratio " << m1 / m2;
  }
  const auto& a = psi.a;
  if (std::abs(a(1)) <= 1e-14 && std::abs(a(2)) <= 1e-14 && std::abs(a(0)) > 1e-14 &&
      std::abs(a(3)) > 1e-14) {
    double p = std::norm(a(3));
    os << "; diagonal family sqrt(1-p)|00>+z sqrt(p)|11> with p=" << p
       << ": eigenvalues +/- i (p(1-p))^(1/4) up to a global phase, equal moduli for all p";
  }
  v.detail = os.str();
  return v;
}

TwoQubitState rotate(const Eigen::Matrix2cd& U, const TwoQubitState& psi) {
  Eigen::Matrix4cd UU = Eigen::Matrix4cd::Zero();
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) UU(2 * i + k, 2 * j + l) = U(i, j) * U(k, l);
  return {UU * psi.a};
}

TwoQubitState reconstruct_from_transfer(const Eigen::Matrix2cd& T) {
  Eigen::Vector4cd a;
  a << -std::conj(T(1, 0)), std::conj(T(0, 0)), -std::conj(T(1, 1)), std::conj(T(0, 1));
  return make_state(a);
}

CanonicalForm canonical_form(const TwoQubitState& psi) {
  auto tm = transfer_matrix(psi);

  // step 1: send one eigenvector to |0>, upper-triangularizing T
  Eigen::Vector2cd u = tm.vec1;
  Eigen::Matrix2cd V;
  V << std::conj(u(0)), std::conj(u(1)), -u(1), u(0);  // det V = 1
  Eigen::Matrix2cd T1 = V * tm.T * V.adjoint();

  // step 2: global phase making the eigenvalue sum imaginary
  cxd S = T1(0, 0) + T1(1, 1);
  cxd phase = std::abs(S) > 1e-14 ? cxd(0, 1) * std::conj(S) / std::abs(S) : cxd(1.0);
  Eigen::Matrix2cd U2 = std::sqrt(cxd(1.0) / phase) * Eigen::Matrix2cd::Identity();
  Eigen::Matrix2cd T2 = phase * T1;

  // step 3: diagonal phases making the off-diagonal entry real nonnegative
  cxd d = T2(0, 1);
  cxd e2iphi = std::abs(d) > 1e-14 ? std::conj(d) / std::abs(d) : cxd(1.0);
  cxd eiphi = std::sqrt(e2iphi);
  Eigen::Matrix2cd U3 = Eigen::Matrix2cd::Zero();
  U3(0, 0) = eiphi;
  U3(1, 1) = std::conj(eiphi);
  Eigen::Matrix2cd T3 = U3 * T2 * U3.adjoint();

  CanonicalForm out;
  out.U = U3 * U2 * V;
  out.alpha = std::real(T3(0, 0));
  out.beta = -std::imag(T3(0, 0));
  out.gamma = std::imag(T3(1, 1));
  out.delta = std::real(T3(0, 1));
  require(std::abs(T3(1, 0)) <= 1e-10, errc::internal, "canonical form not triangular");
  require(std::abs(std::real(T3(1, 1)) + out.alpha) <= 1e-10, errc::internal,
          "canonical eigenvalue sum not imaginary");
  require(std::abs(std::imag(T3(0, 1))) <= 1e-10 && out.delta >= -1e-12, errc::internal,
          "canonical off-diagonal entry not real nonnegative");
  if (out.delta < 0) out.delta = 0;
  out.state = rotate(out.U, psi);
  return out;
}

TwoQubitState from_canonical(double alpha, double beta, double gamma, double delta) {
  return make_state(0.0, cxd(alpha, beta), cxd(alpha, gamma), delta);
}

TwoQubitState real_family(double p, double theta1, double theta2, int sign) {
  require(p >= 0.0 && p <= 0.5, errc::parameter_out_of_range, "p outside [0, 1/2]");
  require(sign == 1 || sign == -1, errc::invalid_argument, "sign must be +1 or -1");
  auto R = [](double t) {
    Eigen::Matrix2cd m;
    m << std::cos(t), std::sin(t), -std::sin(t), std::cos(t);
    return m;
  };
  Eigen::Vector4cd base = Eigen::Vector4cd::Zero();
  base(0) = std::sqrt(1.0 - p);
  base(3) = sign * std::sqrt(p);
  Eigen::Matrix2cd R1 = R(theta1), R2 = R(theta2);
  Eigen::Vector4cd a = Eigen::Vector4cd::Zero();
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) a(2 * i + k) += R1(i, j) * R2(k, l) * base(2 * j + l);
  return make_state(a);
}

bool gapless_region_real(double p, double dtheta, int sign) {
  require(p >= 0.0 && p <= 0.5, errc::parameter_out_of_range, "p outside [0, 1/2]");
  require(sign == 1 || sign == -1, errc::invalid_argument, "sign must be +1 or -1");
  const double s2 = std::pow(std::sin(dtheta), 2);
  if (sign == 1) {
    if (p <= 0.0) return false;
    return s2 <= 4.0 / (2.0 + 1.0 / std::sqrt(p * (1.0 - p)));
  }
  if (std::abs(p - 0.5) <= 1e-12) return true;
  return std::abs(std::sin(dtheta)) <= 1e-12 && p > 0.0 && p < 1.0;
}

TpowResult tpow_prop_identity(const TwoQubitState& psi, int n, double tol) {
  require(n >= 1, errc::parameter_out_of_range, "n must be positive");
  require(is_entangled(psi), errc::product_state, "matrix power test needs an entangled state");
  auto tm = transfer_matrix(psi);
  Eigen::Matrix2cd M;
  if (!tm.defective) {
    Eigen::Matrix2cd P;
    P.col(0) = tm.vec1;
    P.col(1) = tm.vec2;
    // scale-invariant power: divide eigenvalues by the dominant modulus
    cxd r1 = tm.mu1 / std::abs(tm.mu2), r2 = tm.mu2 / std::abs(tm.mu2);
    Eigen::Matrix2cd D = Eigen::Matrix2cd::Zero();
    D(0, 0) = std::pow(r1, n);
    D(1, 1) = std::pow(r2, n);
    M = P * D * P.inverse();
  } else {
    Eigen::Matrix2cd B = tm.T / tm.T.cwiseAbs().maxCoeff();
    M = Eigen::Matrix2cd::Identity();
    int e = n;
    while (e > 0) {
      if (e & 1) {
        M = M * B;
        M /= M.cwiseAbs().maxCoeff();
      }
      B = B * B;
      B /= B.cwiseAbs().maxCoeff();
      e >>= 1;
    }
  }
  const double scale = M.cwiseAbs().maxCoeff();
  TpowResult out;
  out.off_rel = std::max(std::abs(M(0, 1)), std::abs(M(1, 0))) / scale;
  out.diag_rel = std::abs(M(0, 0) - M(1, 1)) / scale;
  out.proportional = out.off_rel <= tol && out.diag_rel <= tol;
  return out;
}

SchmidtDecomp schmidt(const TwoQubitState& psi, double tol) {
  Eigen::Matrix2cd A;
  A << psi.a(0), psi.a(1), psi.a(2), psi.a(3);
  Eigen::JacobiSVD<Eigen::Matrix2cd> svd(A, Eigen::ComputeFullU | Eigen::ComputeFullV);
  SchmidtDecomp out;
  const auto& s = svd.singularValues();
  out.p0 = s(0) * s(0);
  out.p1 = s(1) * s(1);
  out.w0 = svd.matrixU().col(0);
  out.w1 = svd.matrixU().col(1);
  out.v0 = svd.matrixV().col(0).conjugate();
  out.v1 = svd.matrixV().col(1).conjugate();
  out.product = out.p1 <= tol;
  return out;
}

bool is_entangled(const TwoQubitState& psi, double tol) {
  cxd det = psi.a(0) * psi.a(3) - psi.a(1) * psi.a(2);
  return std::abs(det) > tol;
}

TwoQubitState singlet_state() { return make_state(0.0, 1.0, -1.0, 0.0); }

TwoQubitState xxz_state(double q) {
  require(q > 0.0, errc::parameter_out_of_range, "anisotropy must be positive");
  return make_state(0.0, 1.0, -q, 0.0);
}

TwoQubitState random_two_qubit_state(std::uint64_t seed) {
  Rng rng(seed);
  Eigen::Vector4cd a;
  for (int i = 0; i < 4; ++i) a(i) = rng.cgauss();
  return make_state(a);
}

Eigen::Matrix2cd random_su2(std::uint64_t seed) {
  Rng rng(seed);
  double t = std::asin(std::sqrt(rng.u01()));
  double p1 = 2.0 * M_PI * rng.u01(), p2 = 2.0 * M_PI * rng.u01();
  Eigen::Matrix2cd U;
  U << std::polar(std::cos(t), p1), std::polar(std::sin(t), p2),
      -std::polar(std::sin(t), -p2), std::polar(std::cos(t), -p1);
  return U;
}

}  // namespace ffc
