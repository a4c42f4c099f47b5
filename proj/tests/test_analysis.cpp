#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "ffchain/analysis.hpp"
#include "ffchain/rand.hpp"

using namespace ffc;

namespace {

const double kInvRoot2 = 1.0 / std::sqrt(2.0);

TwoQubitState wall_product_state() { return make_state(0, 0, kInvRoot2, -kInvRoot2); }

TwoQubitState random_entangled(std::uint64_t seed) {
  for (std::uint64_t t = 0;; ++t) {
    TwoQubitState psi = random_two_qubit_state(seed + 7919 * t);
    if (schmidt(psi).p1 >= 0.05) return psi;
  }
}

Eigen::Matrix2cd back_projector(const GaugeFrame& fr, const Eigen::Vector2cd& dir) {
  return fr.W.adjoint() * (dir * dir.adjoint()) * fr.W;
}

double trace_oracle(const ChainSpec& spec, const Matrix& op) {
  Matrix G = kernel_projector_dense(spec, KernelMethod::numeric);
  return std::real((G * op).trace());
}

}  // namespace

TEST_CASE("gauge frame of a gapped entangled state") {
  GaugeFrame fr = gauge_frame(xxz_state(2.0));
  CHECK_FALSE(fr.mu1_zero);
  CHECK(std::abs(fr.lambda - cxd(2.0)) <= 1e-12);
  CHECK(std::abs(fr.c) <= 1e-12);
  CHECK(fr.s == doctest::Approx(1.0));
  CHECK((fr.W * fr.W.adjoint() - Eigen::Matrix2cd::Identity()).norm() <= 1e-12);
  // triangular transfer matrix in the rotated frame, eigendirections |0> and v
  TransferMatrix rot = transfer_matrix(fr.psi_rot);
  CHECK(std::abs(rot.T(1, 0)) <= 1e-12);
}

TEST_CASE("gauge frame of a product state marks the vanishing eigenvalue") {
  GaugeFrame fr = gauge_frame(wall_product_state());
  CHECK(fr.mu1_zero);
  CHECK(std::abs(fr.psi_rot.a(0)) <= 1e-12);
  CHECK(std::abs(fr.psi_rot.a(1)) <= 1e-12);
  CHECK(fr.s > 0.0);
}

TEST_CASE("gauge frame rejects equal moduli") {
  CHECK_THROWS_AS(gauge_frame(singlet_state()), error);
  CHECK_THROWS_AS(gauge_frame(real_family(0.5, 0.0, 0.0, +1)), error);
}

TEST_CASE("ground expectation: trace normalization and site collisions") {
  ChainSpec spec = make_chain_spec(4, Boundary::open, {xxz_state(2.0)});
  CHECK(ground_expectation(spec, {}) == doctest::Approx(5.0).epsilon(1e-9));
  Eigen::Matrix2cd Z;
  Z << 1, 0, 0, -1;
  CHECK_THROWS_AS(ground_expectation(spec, {{2, Z}, {2, Z}}), error);
  CHECK_THROWS_AS(ground_expectation(spec, {{0, Z}}), error);
  CHECK_THROWS_AS(ground_expectation(spec, {{5, Z}}), error);
}

TEST_CASE("endpoint correlation matches a dense trace") {
  ChainSpec spec = make_chain_spec(4, Boundary::open, {xxz_state(2.0)});
  GaugeFrame fr = gauge_frame(xxz_state(2.0));
  double val = tau_end(spec);
  double oracle = trace_oracle(spec, embed_region(back_projector(fr, fr.vperp), 4, 4, 4));
  CHECK(std::abs(val - oracle) <= 1e-8);
  CHECK(val >= 0.0);
  CHECK(val <= 5.0);
}

TEST_CASE("two-point correlation matches a dense trace") {
  for (const TwoQubitState& psi : {xxz_state(1.5), wall_product_state()}) {
    ChainSpec spec = make_chain_spec(4, Boundary::open, {psi});
    GaugeFrame fr = gauge_frame(psi);
    Matrix op = embed_region(back_projector(fr, Eigen::Vector2cd(0, 1)), 4, 1, 1) *
                embed_region(back_projector(fr, fr.vperp), 4, 3, 3);
    CHECK(std::abs(tau_corr(spec, 1, 3) - trace_oracle(spec, op)) <= 1e-8);
  }
  ChainSpec spec = make_chain_spec(4, Boundary::open, {xxz_state(1.5)});
  CHECK_THROWS_AS(tau_corr(spec, 3, 3), error);
  CHECK_THROWS_AS(tau_corr(spec, 0, 2), error);
}

TEST_CASE("run correlations match dense traces") {
  TwoQubitState psi = xxz_state(2.0);
  ChainSpec spec = make_chain_spec(5, Boundary::open, {psi});
  GaugeFrame fr = gauge_frame(psi);
  Matrix Pv = back_projector(fr, fr.v);

  Matrix run = Matrix::Identity(32, 32);
  for (int site = 4; site <= 5; ++site) run = run * embed_region(Pv, 5, site, site);
  CHECK(std::abs(theta_corr(spec, 2) - trace_oracle(spec, run)) <= 1e-8);
  CHECK(theta_corr(spec, 0) == doctest::Approx(6.0).epsilon(1e-9));

  Matrix xi_op = embed_region(Pv, 5, 4, 4) * embed_region(back_projector(fr, fr.vperp), 5, 5, 5);
  CHECK(std::abs(xi_corr(spec, 1) - trace_oracle(spec, xi_op)) <= 1e-8);
}

TEST_CASE("largest correlation expectation sits below the gauge bound") {
  TwoQubitState psi = xxz_state(2.0);
  ChainSpec spec = make_chain_spec(6, Boundary::open, {psi});
  double smax = sigma_max(spec, 2, 5);
  double bound = sigma_bound(psi, 2, 5);
  CHECK(bound == doctest::Approx(1.0 / 64.0).epsilon(1e-12));
  CHECK(smax >= -1e-12);
  CHECK(smax <= bound + 1e-9);
  CHECK(sigma_bound(wall_product_state(), 1, 4) == 0.0);
  CHECK_THROWS_AS(sigma_bound(psi, 3, 3), error);
}

TEST_CASE("one-bond partial trace equals the reduced bond state") {
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    TwoQubitState psi = random_entangled(20 + seed);
    MonotonicityReport rep = monotonicity_check({psi});
    SchmidtDecomp sd = schmidt(psi);
    CHECK(rep.n == 2);
    CHECK(rep.rn_norm_def == doctest::Approx(sd.p0).epsilon(1e-8));
    CHECK(rep.min_support_eig == doctest::Approx(2.0 - sd.p0).epsilon(1e-8));
    CHECK_FALSE(rep.formula_skipped);
    CHECK(rep.rn_agreement <= 1e-9);
  }
}

TEST_CASE("partial-trace monotonicity invariants on random chains") {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const int n = 3 + int(seed % 3);
    std::vector<TwoQubitState> bonds;
    for (int b = 0; b < n - 1; ++b) bonds.push_back(random_entangled(100 * seed + b));
    MonotonicityReport rep = monotonicity_check(bonds);
    CHECK(rep.min_support_eig >= 1.0 - 1e-8);
    CHECK(rep.off_support_norm <= 1e-9);
    CHECK(rep.rn_norm_def <= 1.0 + 1e-8);
    if (!rep.formula_skipped && !rep.ill_conditioned) {
      CHECK(rep.rn_agreement <= 1e-8);
      CHECK(rep.m_identity_dev <= 1e-9);
      CHECK(rep.m_lower_min >= 1.0 - 1e-8);
    }
  }
}

TEST_CASE("product last bond skips the closed-form route") {
  MonotonicityReport rep = monotonicity_check({xxz_state(2.0), wall_product_state()});
  CHECK(rep.formula_skipped);
  CHECK(std::isnan(rep.rn_norm_formula));
  CHECK(rep.min_support_eig >= 1.0 - 1e-8);
}

TEST_CASE("random subspaces are not partial-trace monotone") {
  bool violated = false;
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    double v = random_subspace_partial_trace_min(5, 4000 + seed);
    CHECK(std::isfinite(v));
    CHECK(v > 0.0);
    if (v < 1.0 - 1e-6) violated = true;
  }
  CHECK(violated);
}

TEST_CASE("ground-projector overlap error shrinks with the buffer") {
  TwoQubitState psi = xxz_state(2.0);
  double small_buffer = nachtergaele_overlap(psi, 7, 2);
  double big_buffer = nachtergaele_overlap(psi, 7, 5);
  CHECK(big_buffer < small_buffer);
  CHECK(big_buffer < 0.5 * small_buffer);

  // independent reconstruction at n = 6, buffer 3
  ChainSpec spec = make_chain_spec(6, Boundary::open, {psi});
  Matrix G_abc = kernel_projector_dense(spec, KernelMethod::numeric);
  Matrix G_ab =
      embed_region(kernel_projector_dense(restrict_region_spec(spec, 1, 5)), 6, 1, 5);
  Matrix G_bc =
      embed_region(kernel_projector_dense(restrict_region_spec(spec, 3, 6)), 6, 3, 6);
  CHECK(std::abs(nachtergaele_overlap(psi, 6, 3) - two_norm_dense(G_abc - G_ab * G_bc)) <= 1e-9);

  CHECK_THROWS_AS(nachtergaele_overlap(psi, 4, 3), error);
}

TEST_CASE("region-exclusion deviations vanish for a product bond") {
  TwoQubitState psi = wall_product_state();
  CHECK(region_exclusion(psi, 4, ExclusionLemma::C1, {1, 2, 1}) <= 1e-10);
  CHECK(region_exclusion(psi, 4, ExclusionLemma::C2, {1, 1, 1, 1}) <= 1e-10);
  CHECK(region_exclusion(psi, 4, ExclusionLemma::X1, {1, 2, 1}) <= 1e-10);
  CHECK(region_exclusion(psi, 4, ExclusionLemma::X2, {1, 2, 1}) <= 1e-10);
}

TEST_CASE("region-exclusion deviation decays with the middle block") {
  TwoQubitState psi = xxz_state(2.0);
  double wide = region_exclusion(psi, 8, ExclusionLemma::C1, {2, 2, 4});
  double wider = region_exclusion(psi, 8, ExclusionLemma::C1, {2, 4, 2});
  CHECK(wider < wide);
  CHECK(wider < 0.5 * wide);
}

TEST_CASE("region-exclusion partition validation") {
  TwoQubitState psi = xxz_state(2.0);
  CHECK_THROWS_AS(region_exclusion(psi, 6, ExclusionLemma::C1, {1, 2, 1}), error);
  CHECK_THROWS_AS(region_exclusion(psi, 6, ExclusionLemma::C1, {2, 2, 2, 0}), error);
  CHECK_THROWS_AS(region_exclusion(psi, 6, ExclusionLemma::C1, {3, 0, 3}), error);
  CHECK_THROWS_AS(region_exclusion(psi, 6, ExclusionLemma::C2, {2, 2, 2}), error);
  CHECK_THROWS_AS(region_exclusion(psi, 6, ExclusionLemma::X1, {0, 3, 3}), error);
}

TEST_CASE("decay-rate fit") {
  std::vector<std::pair<int, double>> geometric;
  for (int d = 1; d <= 6; ++d) geometric.emplace_back(d, std::pow(4.0, -d));
  DecayFit fit = decay_fit(geometric);
  CHECK(std::abs(fit.rate - std::log(4.0)) <= 1e-9);
  CHECK(fit.rms <= 1e-9);

  std::vector<std::pair<int, double>> flat = {{1, 0.7}, {2, 0.7}, {3, 0.7}, {4, 0.7}};
  CHECK(std::abs(decay_fit(flat).rate) <= 1e-12);

  CHECK_THROWS_AS(decay_fit({{1, 0.5}, {2, 0.25}}), error);
  CHECK_THROWS_AS(decay_fit({{1, 0.5}, {2, 0.0}, {3, 0.1}}), error);
  CHECK_THROWS_AS(decay_fit({{2, 0.5}, {2, 0.25}, {2, 0.125}}), error);
}

TEST_CASE("embedding helpers") {
  Matrix X(2, 2);
  X << 0, 1, 1, 0;
  Matrix IX = embed_region(X, 2, 2, 2);
  CHECK((IX - kron(Matrix::Identity(2, 2), X)).norm() == 0.0);
  Matrix XI = embed_region(X, 2, 1, 1);
  CHECK((XI - kron(X, Matrix::Identity(2, 2))).norm() == 0.0);
  CHECK_THROWS_AS(embed_region(X, 3, 1, 2), error);

  Matrix P = product_projector(Eigen::Vector2cd(1, 0), 2);
  CHECK(P(0, 0) == cxd(1.0));
  CHECK(std::abs(P.trace() - cxd(1.0)) <= 1e-15);
  CHECK((P * P - P).norm() <= 1e-14);
}
