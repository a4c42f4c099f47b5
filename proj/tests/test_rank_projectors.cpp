#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "ffchain/analysis.hpp"
#include "ffchain/rand.hpp"
#include "ffchain/rank_projectors.hpp"

using namespace ffc;

namespace {

Matrix span_projector(const std::vector<Eigen::Vector4cd>& vs) {
  std::vector<Vector> cols;
  for (const auto& v : vs) cols.push_back(Vector(v));
  Matrix P = Matrix::Zero(4, 4);
  for (const Vector& q : orthonormalize(cols)) P += q * q.adjoint();
  return P;
}

Matrix from_transfer_pair(const Eigen::Matrix2cd& A, const Eigen::Matrix2cd& B) {
  return span_projector({reconstruct_from_transfer(A).a, reconstruct_from_transfer(B).a});
}

Matrix p4_of(cxd f) {
  Eigen::Vector4cd nu(0, 1, -f, 0);
  nu /= nu.norm();
  return span_projector({Eigen::Vector4cd(0, 0, 0, 1), nu});
}

int chain_nullity(const Matrix& P, int n) {
  ChainSpec spec = make_chain_spec(n, Boundary::open, {singlet_state()}, Eigen::Matrix4cd(P));
  return int(kernel_basis(spec, KernelMethod::numeric).vectors.size());
}

Matrix case1_projector() {
  Eigen::Matrix2cd A, B;
  A << 1, 1, 0, 1;
  B << 1, 0.5, 0, 0.5;
  return from_transfer_pair(A, B);
}

Matrix case3_projector() {
  Eigen::Matrix2cd A, B;
  A << 0, 1, 1, 0;
  B << 0, 1.0 / 3.0, 1, 0;
  return from_transfer_pair(A, B);
}

Matrix case5_projector() {
  Eigen::Matrix2cd A, B;
  A << 0, 1, 1, 1;
  B << 0, 0.5, 1, 0.5;
  return from_transfer_pair(A, B);
}

}  // namespace

TEST_CASE("projector validation") {
  Eigen::Vector4cd s = singlet_state().a;
  ProjectorSpec r1 = validate_projector(Matrix(s * s.adjoint()));
  CHECK(r1.rank == 1);

  Eigen::Vector4cd chi(0.5, 0.5, 0.5, 0.5);
  ProjectorSpec r3 = validate_projector(Matrix(Matrix::Identity(4, 4) - chi * chi.adjoint()));
  CHECK(r3.rank == 3);

  Eigen::Vector4cd x = xxz_state(2.0).a;
  Matrix psd = 2.0 * (s * s.adjoint()) + 0.5 * (x * x.adjoint());
  CHECK_THROWS_AS(validate_projector(psd), error);
  ProjectorSpec red = validate_projector(psd, true);
  CHECK(red.rank == 2);
  CHECK((red.matrix * red.matrix - red.matrix).norm() <= 1e-10);

  Matrix herm_broken = Matrix::Zero(4, 4);
  herm_broken(0, 1) = 1.0;
  CHECK_THROWS_AS(validate_projector(herm_broken), error);
  CHECK_THROWS_AS(validate_projector(Matrix(Matrix::Identity(4, 4))), error);
  CHECK_THROWS_AS(validate_projector(Matrix(Matrix::Zero(4, 4)), true), error);
  CHECK_THROWS_AS(validate_projector(Matrix(Matrix::Identity(3, 3))), error);
  CHECK_THROWS_AS(validate_projector(Matrix(-psd), true), error);
}

TEST_CASE("rank-3 taxonomy: symmetric product null vector is the gapped survivor") {
  Eigen::Vector2cd theta(std::sqrt(0.3), std::sqrt(0.7));
  Eigen::Vector4cd chi;
  chi << theta(0) * theta(0), theta(0) * theta(1), theta(1) * theta(0), theta(1) * theta(1);
  Matrix P = Matrix::Identity(4, 4) - chi * chi.adjoint();
  Rank3Verdict v = classify_rank3(validate_projector(P));
  CHECK(v.frustration_free);
  REQUIRE(v.has_theta);
  CHECK(std::abs(std::abs(theta.dot(v.theta)) - 1.0) <= 1e-9);
  CHECK(chain_nullity(P, 4) == 1);
  CHECK(chain_nullity(P, 5) == 1);

  Eigen::Vector4cd sing = singlet_state().a;
  Rank3Verdict ve =
      classify_rank3(validate_projector(Matrix(Matrix::Identity(4, 4) - sing * sing.adjoint())));
  CHECK_FALSE(ve.frustration_free);
  CHECK_FALSE(ve.has_theta);

  Eigen::Vector4cd asym(0, 1, 0, 0);  // |0>(x)|1>, nonparallel factors
  Matrix Pa = Matrix::Identity(4, 4) - asym * asym.adjoint();
  Rank3Verdict va = classify_rank3(validate_projector(Pa));
  CHECK_FALSE(va.frustration_free);
  CHECK(chain_nullity(Pa, 4) == 0);

  CHECK_THROWS_AS(classify_rank3(validate_projector(Matrix(sing * sing.adjoint()))), error);
}

TEST_CASE("rank-2 case 1: single product ground state") {
  Matrix P = case1_projector();
  Rank2Verdict v = classify_rank2(validate_projector(P));
  REQUIRE(v.case_id == 1);
  CHECK(v.has_alpha);
  CHECK(std::abs(std::abs(v.alpha(0)) - 1.0) <= 1e-8);
  CHECK(v.gapped);
  CHECK(v.validated_nullity.at(4) == 1);
  CHECK(chain_nullity(P, 5) == 1);
  CHECK(chain_nullity(P, 6) == 1);
  auto gs = rank2_groundspace(v, 5, &P);
  REQUIRE(gs.size() == 1);
  CHECK(std::abs(std::abs(gs[0](0)) - 1.0) <= 1e-8);  // |00000> up to phase
}

TEST_CASE("rank-2 case 2: two product ground states") {
  Matrix P = span_projector({singlet_state().a, xxz_state(2.0).a});
  Rank2Verdict v = classify_rank2(validate_projector(P));
  REQUIRE(v.case_id == 2);
  const double straight =
      std::max(std::abs(std::abs(v.alpha(0)) - 1.0), std::abs(std::abs(v.beta(1)) - 1.0));
  const double swapped =
      std::max(std::abs(std::abs(v.alpha(1)) - 1.0), std::abs(std::abs(v.beta(0)) - 1.0));
  CHECK(std::min(straight, swapped) <= 1e-8);
  CHECK(v.gapped);
  for (int n : {4, 5, 6}) CHECK(chain_nullity(P, n) == 2);
  CHECK(rank2_groundspace(v, 5, &P).size() == 2);
}

TEST_CASE("rank-2 case 3: alternating ground states") {
  Matrix P = case3_projector();
  Rank2Verdict v = classify_rank2(validate_projector(P));
  REQUIRE(v.case_id == 3);
  CHECK(v.gapped);
  for (int n : {4, 5, 6}) CHECK(chain_nullity(P, n) == 2);
  auto gs = rank2_groundspace(v, 6, &P);
  REQUIRE(gs.size() == 2);
  CHECK(std::abs(std::abs(gs[0].dot(gs[1]))) <= 1e-8);
}

TEST_CASE("rank-2 case 4: weighted domain wall with extracted weight") {
  for (cxd f : {cxd(2.0), cxd(0.5), cxd(1.0), std::exp(cxd(0.0, M_PI / 3.0))}) {
    Matrix P = p4_of(f);
    Rank2Verdict v = classify_rank2(validate_projector(P));
    REQUIRE(v.case_id == 4);
    CHECK(std::abs(v.f - f) <= 1e-8);
    CHECK(std::abs(std::abs(v.alpha(0)) - 1.0) <= 1e-8);
    CHECK(v.gapped == (std::abs(std::abs(f) - 1.0) > 1e-9));
    CHECK(v.validated_nullity.at(4) == 2);
    CHECK(chain_nullity(P, 6) == 2);

    const int n = 5;
    auto gs = rank2_groundspace(v, n, &P);
    REQUIRE(gs.size() == 2);
    Vector wall = Vector::Zero(1 << n);
    cxd w = 1.0;
    for (int i = 1; i <= n; ++i) {
      wall(std::ptrdiff_t(1) << (n - i)) = w;  // |0^{i-1} 1 0^{n-i}>
      w *= std::conj(v.f);
    }
    wall.normalize();
    CHECK(std::abs(std::abs(wall.dot(gs[1])) - 1.0) <= 1e-8);
  }
}

TEST_CASE("rank-2 case 5: frustrated projector has empty ground space") {
  Matrix P = case5_projector();
  Rank2Verdict v = classify_rank2(validate_projector(P));
  REQUIRE(v.case_id == 5);
  CHECK(v.validated_nullity.at(4) == 0);
  CHECK(chain_nullity(P, 5) == 0);
  CHECK(chain_nullity(P, 6) == 0);
  CHECK_THROWS_AS(rank2_groundspace(v, 5), error);
}

TEST_CASE("one-local rank-2 projectors are rejected") {
  Matrix q = Matrix::Zero(2, 2);
  q(0, 0) = 1.0;
  Matrix left = kron(q, Matrix::Identity(2, 2));
  CHECK_THROWS_AS(classify_rank2(validate_projector(left)), error);
  Matrix right = kron(Matrix::Identity(2, 2), q);
  CHECK_THROWS_AS(classify_rank2(validate_projector(right)), error);
}

TEST_CASE("weight-one block of the gapless case") {
  for (int n = 2; n <= 12; ++n) {
    GaplessBlock b = rank2_gapless_block(1.0, n);
    CHECK(std::abs(b.smallest_nonzero - (1.0 - std::cos(M_PI / n))) <= 1e-10);
  }
  cxd ftw = std::exp(cxd(0.0, 0.9));
  GaplessBlock tw = rank2_gapless_block(ftw, 7);
  CHECK(std::abs(tw.smallest_nonzero - (1.0 - std::cos(M_PI / 7))) <= 1e-10);
  CHECK((tw.block - tw.block.adjoint()).norm() <= 1e-12);

  // f = 1 block is half the path-graph Laplacian
  Matrix b4 = rank2_gapless_block(1.0, 4).block;
  Matrix lap(4, 4);
  lap << 1, -1, 0, 0, -1, 2, -1, 0, 0, -1, 2, -1, 0, 0, -1, 1;
  CHECK((b4 - 0.5 * lap).norm() <= 1e-12);

  CHECK_THROWS_AS(rank2_gapless_block(2.0, 5), error);
  CHECK_THROWS_AS(rank2_gapless_block(1.0, 1), error);
}

TEST_CASE("classification is stable under local basis changes") {
  Matrix P2 = span_projector({singlet_state().a, xxz_state(2.0).a});
  Matrix P4 = p4_of(cxd(2.0));
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    Matrix U2 = Matrix(random_su2(6000 + seed));
    Matrix U4 = kron(U2, U2);
    Rank2Verdict v2 = classify_rank2(validate_projector(U4 * P2 * U4.adjoint()));
    CHECK(v2.case_id == 2);
    Rank2Verdict v4 = classify_rank2(validate_projector(U4 * P4 * U4.adjoint()));
    CHECK(v4.case_id == 4);
    CHECK(std::abs(std::abs(v4.f) - 2.0) <= 1e-8);
  }
}
