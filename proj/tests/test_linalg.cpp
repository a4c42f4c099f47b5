#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "ffchain/chain.hpp"
#include "ffchain/groundspace.hpp"
#include "ffchain/linalg.hpp"
#include "ffchain/rand.hpp"
#include "ffchain/states.hpp"

using namespace ffc;

namespace {

Matrix dense_of(const ChainSpec& spec) { return build_chain(spec).dense(); }

Matrix random_hermitian(int dim, std::uint64_t seed) {
  Rng rng(seed);
  Matrix A(dim, dim);
  for (int j = 0; j < dim; ++j)
    for (int i = 0; i < dim; ++i) A(i, j) = rng.cgauss();
  return Matrix(0.5 * (A + A.adjoint()));
}

}  // namespace

TEST_CASE("dense hermitian eigensystem on explicit matrices") {
  Matrix d = Matrix::Zero(3, 3);
  d(0, 0) = 3;
  d(1, 1) = 1;
  d(2, 2) = 2;
  EigResult r = eig_hermitian_dense(d);
  CHECK(r.values(0) == doctest::Approx(1.0));
  CHECK(r.values(1) == doctest::Approx(2.0));
  CHECK(r.values(2) == doctest::Approx(3.0));

  Matrix z = Matrix::Zero(2, 2);
  z(0, 0) = 1;
  z(1, 1) = -1;
  EigResult rz = eig_hermitian_dense(z);
  CHECK(rz.values(0) == doctest::Approx(-1.0));
  CHECK(rz.values(1) == doctest::Approx(1.0));

  Matrix nh = Matrix::Zero(2, 2);
  nh(0, 1) = 1.0;
  CHECK_THROWS_AS(eig_hermitian_dense(nh), error);
}

TEST_CASE("four-site singlet chain has smallest nonzero eigenvalue 1-cos(pi/4)") {
  Matrix H = dense_of(make_chain_spec(4, Boundary::open, {singlet_state()}));
  EigResult r = eig_hermitian_dense(H);
  int zeros = 0;
  while (zeros < r.values.size() && r.values(zeros) < 1e-9) ++zeros;
  CHECK(zeros == 5);
  CHECK(std::abs(r.values(zeros) - (1.0 - std::cos(M_PI / 4))) <= 1e-10);
}

TEST_CASE("deflated smallest-nonzero on a diagonal with explicit kernel") {
  Matrix d = Matrix::Zero(4, 4);
  d(2, 2) = 3;
  d(3, 3) = 5;
  LinOp apply = [&](const Vector& x, Vector& y) { y = d * x; };
  std::vector<Vector> kernel = {Vector::Unit(4, 0), Vector::Unit(4, 1)};
  DeflatedResult r = smallest_nonzero_deflated(apply, 4, kernel);
  CHECK(std::abs(r.value - 3.0) <= 1e-8);
}

TEST_CASE("deflated gap matches closed forms with analytic kernels") {
  ChainSpec s8 = make_chain_spec(8, Boundary::open, {singlet_state()});
  ChainOperator H8 = build_chain(s8);
  KernelBasis k8 = kernel_basis(s8);
  DeflatedResult r8 = smallest_nonzero_deflated(H8.linop(), H8.dim(), k8.vectors);
  CHECK(std::abs(r8.value - (1.0 - std::cos(M_PI / 8))) <= 1e-6);

  double q = 2.0;
  ChainSpec s10 = make_chain_spec(10, Boundary::open, {xxz_state(q)});
  ChainOperator H10 = build_chain(s10);
  KernelBasis k10 = kernel_basis(s10);
  DeflatedResult r10 = smallest_nonzero_deflated(H10.linop(), H10.dim(), k10.vectors);
  CHECK(std::abs(r10.value - (1.0 - 2.0 / (q + 1.0 / q) * std::cos(M_PI / 10))) <= 1e-6);
}

TEST_CASE("dense and deflated agree on random chains") {
  for (std::uint64_t seed : {11u, 12u, 13u}) {
    std::vector<TwoQubitState> bonds;
    for (int b = 0; b < 6; ++b) bonds.push_back(random_two_qubit_state(100 * seed + b));
    ChainSpec spec = make_chain_spec(7, Boundary::open, bonds);
    ChainOperator H = build_chain(spec);
    EigResult dense = eig_hermitian_dense(H.dense());
    int zeros = 0;
    while (zeros < dense.values.size() && dense.values(zeros) < 1e-9) ++zeros;
    KernelBasis k = kernel_basis(spec, KernelMethod::numeric);
    CHECK(int(k.vectors.size()) == zeros);
    DeflatedResult it = smallest_nonzero_deflated(H.linop(), H.dim(), k.vectors, 1e-9);
    CHECK(std::abs(it.value - dense.values(zeros)) <= 1e-7);
  }
}

TEST_CASE("partial trace on explicit states") {
  Vector bell = Vector::Zero(4);
  bell(0) = 1.0 / std::sqrt(2.0);
  bell(3) = 1.0 / std::sqrt(2.0);
  Matrix rho = bell * bell.adjoint();
  Matrix red = partial_trace(rho, 2, {2});
  CHECK((red - 0.5 * Matrix::Identity(2, 2)).norm() <= 1e-12);

  Matrix a = random_hermitian(2, 21), b = random_hermitian(4, 22);
  b /= b.trace().real();
  Matrix prod = Matrix::Zero(8, 8);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) prod.block(4 * i, 4 * j, 4, 4) = a(i, j) * b;
  CHECK((partial_trace(prod, 3, {2, 3}) - a).norm() <= 1e-12);

  Matrix r = random_hermitian(16, 23);
  CHECK(std::abs(partial_trace(r, 4, {1, 3}).trace() - r.trace()) <= 1e-12);
}

TEST_CASE("traced ground projector of a 3-site chain has near-unit support eigenvalues") {
  for (std::uint64_t seed : {5u, 6u, 7u}) {
    std::vector<TwoQubitState> bonds = {random_two_qubit_state(1000 + seed),
                                        random_two_qubit_state(2000 + seed)};
    ChainSpec spec = make_chain_spec(3, Boundary::open, bonds);
    Matrix H = dense_of(spec);
    EigResult r = eig_hermitian_dense(H);
    Matrix G = Matrix::Zero(8, 8);
    for (int i = 0; i < r.values.size(); ++i)
      if (r.values(i) < 1e-10) G += r.vectors.col(i) * r.vectors.col(i).adjoint();
    EigResult pt = eig_hermitian_dense(partial_trace(G, 3, {3}));
    for (int i = 0; i < pt.values.size(); ++i)
      CHECK((pt.values(i) <= 1e-9 || pt.values(i) >= 1.0 - 1e-9));
  }
}

TEST_CASE("orthonormalize drops duplicates and near-duplicates") {
  Vector e1 = Vector::Unit(3, 0), e2 = Vector::Unit(3, 1);
  std::vector<Vector> two = orthonormalize({e1, e1, e2});
  REQUIRE(two.size() == 2);
  Matrix O(3, 2);
  O.col(0) = two[0];
  O.col(1) = two[1];
  CHECK((O.adjoint() * O - Matrix::Identity(2, 2)).norm() <= 1e-10);

  Vector near = e1 + 1e-14 * e2;
  CHECK(orthonormalize({e1, near}, 1e-10).size() == 1);
}

TEST_CASE("analytic kernel vectors are orthonormal at n=5") {
  KernelBasis k = kernel_basis(make_chain_spec(5, Boundary::open, {xxz_state(2.0)}));
  REQUIRE(k.vectors.size() == 6);
  Matrix O(32, 6);
  for (int i = 0; i < 6; ++i) O.col(i) = k.vectors[std::size_t(i)];
  CHECK((O.adjoint() * O - Matrix::Identity(6, 6)).norm() <= 1e-10);
}

TEST_CASE("operator two-norm") {
  LinOp id = [](const Vector& x, Vector& y) { y = x; };
  CHECK(std::abs(op_two_norm(id, id, 8) - 1.0) <= 1e-9);

  Vector u = random_unit_vector(6, 31), w = random_unit_vector(6, 32);
  Matrix outer = u * w.adjoint();
  CHECK(std::abs(two_norm_dense(outer) - 1.0) <= 1e-9);

  Matrix A = random_hermitian(12, 33) + Matrix(random_hermitian(12, 34) * cxd(0, 1));
  Eigen::JacobiSVD<Matrix> svd(A);
  CHECK(std::abs(two_norm_dense(A) - svd.singularValues()(0)) <= 1e-8);
}
