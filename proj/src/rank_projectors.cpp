#include "ffchain/rank_projectors.hpp"

#include <array>
#include <cmath>

#include "ffchain/analysis.hpp"
#include "ffchain/chain.hpp"
#include "ffchain/groundspace.hpp"

namespace ffc {

namespace {

Eigen::Vector2cd phase_fixed(Eigen::Vector2cd u) {
  u.normalize();
  const int k = std::abs(u(0)) >= std::abs(u(1)) ? 0 : 1;
  if (std::abs(u(k)) > 0) u *= std::conj(u(k)) / std::abs(u(k));
  return u;
}

Eigen::Matrix2cd t_of(const Eigen::Vector4cd& a) {
  Eigen::Matrix2cd T;
  T << std::conj(a(1)), std::conj(a(3)), -std::conj(a(0)), -std::conj(a(2));
  return T;
}

// concurrence-style entanglement score, scale invariant
double ent_score(const Eigen::Vector4cd& a) {
  const double n2 = a.squaredNorm();
  if (n2 <= 0) return 0.0;
  return std::abs(a(0) * a(3) - a(1) * a(2)) / n2;
}

Eigen::Vector2cd evec2(const Eigen::Matrix2cd& A, cxd lam) {
  Eigen::Vector2cd r1(A(0, 1), lam - A(0, 0));
  Eigen::Vector2cd r2(lam - A(1, 1), A(1, 0));
  Eigen::Vector2cd u = r1.norm() >= r2.norm() ? r1 : r2;
  if (u.norm() <= 1e-14 * (A.norm() + std::abs(lam))) u = Eigen::Vector2cd(1.0, 0.0);
  return phase_fixed(u);
}

bool proportional(const Eigen::Vector2cd& u, const Eigen::Vector2cd& w, double tol) {
  const double wn = w.squaredNorm();
  if (wn <= 0) return false;
  const Eigen::Vector2cd res = u - (w.dot(u) / wn) * w;
  return res.norm() <= tol * std::max(u.norm(), 1e-300);
}

std::vector<Vector> numeric_null_space(const Matrix& pi, int n) {
  auto spec = make_chain_spec(n, Boundary::open, {singlet_state()}, pi);
  return kernel_basis(spec, KernelMethod::numeric).vectors;
}

Vector product_power(const Eigen::Vector2cd& a, int n) {
  std::vector<Eigen::Vector2cd> f(std::size_t(n), a);
  return product_state_vector(f);
}

Vector weight_one_sum(const Eigen::Vector2cd& a, const Eigen::Vector2cd& ap, cxd f, int n) {
  // forbidden vector |01> - f|10> in the alpha frame forces the ratio conj(f)
  Vector out = Vector::Zero(std::ptrdiff_t(1) << n);
  cxd w = 1.0;
  for (int i = 1; i <= n; ++i) {
    std::vector<Eigen::Vector2cd> fs(std::size_t(n), a);
    fs[std::size_t(i - 1)] = ap;
    out += w * product_state_vector(fs);
    w *= std::conj(f);
  }
  out.normalize();
  return out;
}

}  // namespace

ProjectorSpec validate_projector(const Matrix& M, bool reduce) {
  require(M.rows() == 4 && M.cols() == 4, errc::dimension_mismatch, "expected a 4x4 matrix");
  const double scale = std::max(M.norm(), 1.0);
  require((M - M.adjoint()).norm() <= 1e-10 * scale, errc::non_hermitian,
          "matrix is not Hermitian");

  ProjectorSpec out;
  if (reduce) {
    auto eig = eig_hermitian_dense(M, 1e-9);
    const double top = eig.values(3);
    require(top > 0, errc::invalid_argument, "zero matrix has empty range");
    require(eig.values(0) >= -1e-8 * top, errc::invalid_argument,
            "matrix is not positive semidefinite");
    Matrix P = Matrix::Zero(4, 4);
    int r = 0;
    for (int i = 0; i < 4; ++i)
      if (eig.values(i) > 1e-8 * top) {
        P += eig.vectors.col(i) * eig.vectors.col(i).adjoint();
        ++r;
      }
    out.matrix = P;
    out.rank = r;
  } else {
    require((M * M - M).norm() <= 1e-10 * scale, errc::not_idempotent,
            "matrix is not idempotent");
    out.matrix = (M + M.adjoint()) / 2.0;
    out.rank = int(std::lround(std::real(M.trace())));
  }
  require(out.rank >= 1 && out.rank <= 3, errc::wrong_rank,
          "projector rank must be 1, 2 or 3");
  return out;
}

Rank3Verdict classify_rank3(const ProjectorSpec& P) {
  require(P.rank == 3, errc::wrong_rank, "rank-3 projector expected");
  auto eig = eig_hermitian_dense(P.matrix, 1e-9);
  Vector chi = eig.vectors.col(0);  // unique null vector

  Eigen::Matrix2cd C;
  C << chi(0), chi(1), chi(2), chi(3);
  Eigen::JacobiSVD<Eigen::Matrix2cd> svd(C, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Rank3Verdict out;
  if (svd.singularValues()(1) > 1e-9) return out;  // entangled null vector: frustrated
  Eigen::Vector2cd left = phase_fixed(svd.matrixU().col(0));
  Eigen::Vector2cd right = phase_fixed(svd.matrixV().col(0).conjugate());
  if (std::abs(left.dot(right)) < 1.0 - 1e-9) return out;  // product but asymmetric
  out.frustration_free = true;
  out.has_theta = true;
  out.theta = left;
  return out;
}

Rank2Verdict classify_rank2(const ProjectorSpec& P) {
  require(P.rank == 2, errc::wrong_rank, "rank-2 projector expected");
  const Matrix& M = P.matrix;

  {
    Matrix q2 = partial_trace(M, 2, {1}) / 2.0;  // candidate for M = I (x) q2
    Matrix q1 = partial_trace(M, 2, {2}) / 2.0;
    Matrix id = Matrix::Identity(2, 2);
    if ((M - kron(Matrix(id), q2)).norm() <= 1e-8 ||
        (M - kron(q1, Matrix(id))).norm() <= 1e-8)
      fail(errc::one_local_projector,
           "projector acts on a single qubit; the chain has gap 1 at every size");
  }

  auto eig = eig_hermitian_dense(M, 1e-9);
  const Eigen::Vector4cd e0 = eig.vectors.col(3);
  const Eigen::Vector4cd nu = eig.vectors.col(2);

  // entangled spanning pair phi, psi = e0 + z*nu with |det T| maximized
  struct Cand {
    Eigen::Vector4cd v;
    cxd z;
    double score;
  };
  std::vector<Cand> cands;
  cands.push_back({e0, 0.0, ent_score(e0)});
  for (double mag : {0.5, 1.0, 2.0})
    for (int k = 0; k < 16; ++k) {
      const cxd z = mag * std::exp(cxd(0.0, 2.0 * M_PI * k / 16.0));
      Eigen::Vector4cd v = e0 + z * nu;
      cands.push_back({v, z, ent_score(v)});
    }
  std::size_t best = 0;
  for (std::size_t i = 1; i < cands.size(); ++i)
    if (cands[i].score > cands[best].score) best = i;
  require(cands[best].score > 1e-9, errc::internal,
          "no entangled state found in the projector range");
  std::size_t second = best == 0 ? 1 : 0;
  for (std::size_t i = 0; i < cands.size(); ++i)
    if (i != best && std::abs(cands[i].z - cands[best].z) > 1e-12 &&
        cands[i].score > cands[second].score)
      second = i;
  require(cands[second].score > 1e-9, errc::internal,
          "no second entangled state found in the projector range");

  const Eigen::Vector4cd phi = cands[best].v.normalized();
  const Eigen::Vector4cd psi = cands[second].v.normalized();
  const Eigen::Matrix2cd Tphi = t_of(phi), Tpsi = t_of(psi);
  const Eigen::Matrix2cd A = Tphi.inverse() * Tpsi;

  const cxd tr = A.trace(), det = A.determinant();
  const cxd disc = std::sqrt(tr * tr - 4.0 * det);
  const cxd l1 = (tr + disc) / 2.0, l2 = (tr - disc) / 2.0;
  const double scale = std::max({std::abs(l1), std::abs(l2), 1.0});
  // the sqrt turns O(eps) discriminant roundoff into O(sqrt(eps)) splitting,
  // so the coincidence threshold must sit well above 1e-8
  const bool defective = std::abs(l1 - l2) <= 1e-6 * scale;

  Rank2Verdict out;
  constexpr double prop_tol = 1e-8;
  if (!defective) {
    const Eigen::Vector2cd al = evec2(A, l1), be = evec2(A, l2);
    const Eigen::Vector2cd ia = Tpsi * al, ib = Tpsi * be;
    const int ka = proportional(ia, al, prop_tol) ? 0 : proportional(ia, be, prop_tol) ? 1 : 2;
    const int kb = proportional(ib, be, prop_tol) ? 1 : proportional(ib, al, prop_tol) ? 0 : 2;
    if (ka == 0 && kb == 1) {
      out.case_id = 2;
      out.alpha = al;
      out.beta = be;
      out.has_alpha = out.has_beta = true;
    } else if (ka == 1 && kb == 0) {
      out.case_id = 3;
      out.alpha = al;
      out.beta = be;
      out.has_alpha = out.has_beta = true;
    } else if (ka == 0 && kb == 2) {
      out.case_id = 1;
      out.alpha = al;
      out.has_alpha = true;
    } else if (ka == 2 && kb == 1) {
      out.case_id = 1;
      out.alpha = be;
      out.has_alpha = true;
    } else {
      out.case_id = 5;  // swapped-plus-mixed or doubly mixed images cannot be frustration-free
    }
    if (out.case_id != 5) out.gapped = true;
  } else {
    const Eigen::Vector2cd al = evec2(A, tr / 2.0);
    if (proportional(Tpsi * al, al, prop_tol)) {
      const Eigen::Vector2cd ap(-std::conj(al(1)), std::conj(al(0)));
      Eigen::Matrix2cd B;
      B.col(0) = al;
      B.col(1) = ap;
      const Eigen::Matrix2cd That = B.adjoint() * Tpsi * B;
      const cxd x = That(0, 0), z = That(1, 1);
      require(std::abs(x) > 1e-12, errc::internal, "triangular transfer block has zero corner");
      out.case_id = 4;
      out.alpha = al;
      out.beta = ap;
      out.has_alpha = out.has_beta = true;
      out.f = std::conj(z / x);
      out.gapped = std::abs(std::abs(out.f) - 1.0) > 1e-9;
    } else {
      out.case_id = 5;
    }
  }

  // the numeric nullity of the 4-site chain referees borderline dispatches
  auto null4 = numeric_null_space(M, 4);
  const int nullity = int(null4.size());
  out.validated_nullity[4] = nullity;
  const std::array<int, 6> predicted = {-1, 1, 2, 2, 2, 0};
  if (predicted[std::size_t(out.case_id)] != nullity) {
    if (nullity == 0) {
      out = Rank2Verdict{};
      out.case_id = 5;
      out.validated_nullity[4] = nullity;
    } else if (nullity == 1) {
      Matrix rho = partial_trace(null4[0] * null4[0].adjoint(), 4, {2, 3, 4});
      auto reig = eig_hermitian_dense(rho, 1e-8);
      out = Rank2Verdict{};
      out.case_id = 1;
      out.alpha = phase_fixed(reig.vectors.col(1));
      out.has_alpha = true;
      out.gapped = true;
      out.validated_nullity[4] = nullity;
    } else {
      require(nullity == 2, errc::internal, "nullity above the taxonomy maximum");
      // decide among cases 2, 3, 4 by matching candidate spans to the null space
      Matrix num_proj = Matrix::Zero(16, 16);
      for (const auto& g : null4) num_proj += g * g.adjoint();
      auto try_span = [&](const Vector& u, const Vector& w) {
        std::vector<Vector> vs{u, w};
        auto on = orthonormalize(vs, 1e-10);
        if (on.size() != 2) return false;
        Matrix pr = on[0] * on[0].adjoint() + on[1] * on[1].adjoint();
        return (pr - num_proj).norm() <= 1e-6;
      };
      bool resolved = false;
      if (!defective) {
        const Eigen::Vector2cd al = evec2(A, l1), be = evec2(A, l2);
        std::vector<Eigen::Vector2cd> abab{al, be, al, be}, baba{be, al, be, al};
        if (try_span(product_power(al, 4), product_power(be, 4))) {
          out.case_id = 2;
          out.alpha = al;
          out.beta = be;
          resolved = true;
        } else if (try_span(product_state_vector(abab), product_state_vector(baba))) {
          out.case_id = 3;
          out.alpha = al;
          out.beta = be;
          resolved = true;
        }
        if (resolved) {
          out.has_alpha = out.has_beta = true;
          out.gapped = true;
        }
      }
      if (!resolved) {
        // weighted-wall candidate, reachable when the dispatch balked near the
        // defective boundary
        const Eigen::Vector2cd al = evec2(A, tr / 2.0);
        if (proportional(Tpsi * al, al, 1e-6)) {
          const Eigen::Vector2cd ap(-std::conj(al(1)), std::conj(al(0)));
          Eigen::Matrix2cd B;
          B.col(0) = al;
          B.col(1) = ap;
          const Eigen::Matrix2cd That = B.adjoint() * Tpsi * B;
          if (std::abs(That(0, 0)) > 1e-12) {
            const cxd f = std::conj(That(1, 1) / That(0, 0));
            if (try_span(product_power(al, 4), weight_one_sum(al, ap, f, 4))) {
              out = Rank2Verdict{};
              out.case_id = 4;
              out.alpha = al;
              out.beta = ap;
              out.has_alpha = out.has_beta = true;
              out.f = f;
              out.gapped = std::abs(std::abs(f) - 1.0) > 1e-9;
              resolved = true;
            }
          }
        }
      }
      require(resolved, errc::internal, "nullity contradicts every candidate ground set");
      out.validated_nullity[4] = nullity;
    }
  }
  return out;
}

GaplessBlock rank2_gapless_block(cxd f, int n) {
  require(std::abs(std::abs(f) - 1.0) <= 1e-10, errc::not_unit_modulus,
          "block construction needs |f| = 1");
  require(n >= 2, errc::invalid_argument, "need at least two sites");

  // weight-1 sector of sum_i |nu><nu|_{i,i+1} with nu = (|01> - f|10>)/sqrt(2),
  // written in the phase-twisted basis that makes the block real
  const double N = 1.0 + std::abs(f) * std::abs(f);
  Matrix block = Matrix::Zero(n, n);
  std::vector<cxd> ph(std::size_t(n) + 1, 1.0);
  for (int i = 1; i < n; ++i) ph[std::size_t(i + 1)] = ph[std::size_t(i)] / f;
  for (int k = 1; k < n; ++k) {
    const cxd ok = std::conj(ph[std::size_t(k)]) * (-f);  // <e_k|nu> up to 1/sqrt(N)
    const cxd ok1 = std::conj(ph[std::size_t(k + 1)]);
    block(k - 1, k - 1) += ok * std::conj(ok) / N;
    block(k, k) += ok1 * std::conj(ok1) / N;
    block(k - 1, k) += ok * std::conj(ok1) / N;
    block(k, k - 1) += ok1 * std::conj(ok) / N;
  }

  auto eig = eig_hermitian_dense(block, 1e-9);
  GaplessBlock out;
  out.block = block;
  out.smallest_nonzero = 0.0;
  for (std::ptrdiff_t i = 0; i < eig.values.size(); ++i)
    if (eig.values(i) > 1e-10) {
      out.smallest_nonzero = eig.values(i);
      break;
    }
  return out;
}

std::vector<Vector> rank2_groundspace(const Rank2Verdict& v, int n, const Matrix* pi) {
  require(v.case_id >= 1 && v.case_id <= 4, errc::frustrated_case,
          "frustrated verdicts have no ground set");
  require(n >= 2, errc::invalid_argument, "need at least two sites");

  std::vector<Vector> out;
  if (v.case_id == 1) {
    out.push_back(product_power(v.alpha, n));
  } else if (v.case_id == 2) {
    out.push_back(product_power(v.alpha, n));
    out.push_back(product_power(v.beta, n));
  } else if (v.case_id == 3) {
    std::vector<Eigen::Vector2cd> f1, f2;
    for (int i = 0; i < n; ++i) {
      f1.push_back(i % 2 == 0 ? v.alpha : v.beta);
      f2.push_back(i % 2 == 0 ? v.beta : v.alpha);
    }
    out.push_back(product_state_vector(f1));
    out.push_back(product_state_vector(f2));
  } else {
    out.push_back(product_power(v.alpha, n));
    out.push_back(weight_one_sum(v.alpha, v.beta, v.f, n));
  }

  if (pi) {
    auto spec = make_chain_spec(n, Boundary::open, {singlet_state()}, *pi);
    auto op = build_chain(spec);
    for (const auto& g : out) {
      Vector y(g.size());
      op.apply(g, y);
      require(y.norm() <= 1e-9 * g.norm(), errc::kernel_not_annihilated,
              "claimed ground vector has nonzero energy");
    }
  }
  return out;
}

}  // namespace ffc
