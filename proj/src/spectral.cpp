#include "ffchain/spectral.hpp"

#include <cmath>
#include <numeric>

namespace ffc {

namespace {

GapResult gap_dense(const ChainSpec& spec, double tol) {
  auto H = build_chain(spec).dense();
  auto eig = eig_hermitian_dense(H);
  const double cut = tol * std::max(1.0, eig.values(eig.values.size() - 1));
  GapResult out;
  out.n = spec.n;
  out.boundary = spec.boundary;
  out.method = "dense";
  std::ptrdiff_t i = 0;
  while (i < eig.values.size() && eig.values(i) <= cut) ++i;
  require(i < eig.values.size(), errc::invalid_spec, "operator has no nonzero eigenvalue");
  out.kernel_dim = int(i);
  out.gap = eig.values(i);
  out.residual = 0.0;
  return out;
}

GapResult gap_deflated(const ChainSpec& spec, double tol) {
  auto kb = kernel_basis(spec, KernelMethod::automatic, tol);
  auto H = build_chain(spec);
  auto res = smallest_nonzero_deflated(H.linop(), H.dim(), kb.vectors, tol);
  GapResult out;
  out.n = spec.n;
  out.boundary = spec.boundary;
  out.method = "deflated";
  out.kernel_dim = int(kb.vectors.size());
  out.gap = res.value;
  out.residual = res.residual;
  return out;
}

}  // namespace

GapResult spectral_gap(const ChainSpec& spec, GapMethod method, double tol) {
  switch (method) {
    case GapMethod::dense:
      return gap_dense(spec, tol);
    case GapMethod::deflated:
      return gap_deflated(spec, tol);
    case GapMethod::automatic:
      return spec.n <= 10 ? gap_dense(spec, tol) : gap_deflated(spec, tol);
  }
  fail(errc::internal, "unreachable");
}

RVector eigenvalues_lowest(const ChainSpec& spec, int k) {
  auto H = build_chain(spec).dense();
  auto eig = eig_hermitian_dense(H);
  require(k >= 1 && k <= eig.values.size(), errc::parameter_out_of_range,
          "eigenvalue count k out of range");
  return eig.values.head(k);
}

KnabeResult knabe_check(const TwoQubitState& psi, int n, int m, double slack) {
  require(n > 2, errc::parameter_out_of_range, "criterion needs n > 2");
  require(m >= n, errc::parameter_out_of_range, "criterion needs m >= n");
  auto open_spec = make_chain_spec(n, Boundary::open, {psi});
  auto per_spec = make_chain_spec(m, Boundary::periodic, {psi});
  KnabeResult out;
  out.gap_open_n = spectral_gap(open_spec).gap;
  out.gap_periodic_m = spectral_gap(per_spec).gap;
  out.lhs = out.gap_periodic_m;
  out.rhs = double(n - 1) / double(n - 2) * (out.gap_open_n - 1.0 / double(n - 1));
  out.holds = out.lhs >= out.rhs - slack;
  return out;
}

WeylResult weyl_check(const TwoQubitState& psi, const TwoQubitState& phi, int n,
                      double slack) {
  require(n >= 2, errc::parameter_out_of_range, "chain length");
  WeylResult out;
  out.bound = 2.0 * double(n) * (psi.a - phi.a).norm();
  for (auto b : {Boundary::open, Boundary::periodic}) {
    auto e1 = eig_hermitian_dense(build_chain(make_chain_spec(n, b, {psi})).dense()).values;
    auto e2 = eig_hermitian_dense(build_chain(make_chain_spec(n, b, {phi})).dense()).values;
    double dev = (e1 - e2).cwiseAbs().maxCoeff();
    (b == Boundary::open ? out.max_dev_open : out.max_dev_periodic) = dev;
  }
  out.holds = out.max_dev_open <= out.bound + slack && out.max_dev_periodic <= out.bound + slack;
  return out;
}

std::vector<Convergent> convergents(double theta, int count) {
  require(theta > 0.0 && std::isfinite(theta), errc::parameter_out_of_range,
          "theta must be positive and finite");
  require(count >= 1, errc::parameter_out_of_range, "count");
  std::vector<Convergent> all;
  long long h_prev = 1, h_prev2 = 0;  // numerators
  long long k_prev = 0, k_prev2 = 1;  // denominators
  double x = theta;
  bool terminated = false;
  for (int j = 0; j < 64; ++j) {
    double af = std::floor(x);
    if (af > 9e17) break;
    long long a = (long long)(af);
    // overflow / precision guards
    if (k_prev > 0 && (a > ((long long)4e18 - k_prev2) / std::max(k_prev, 1LL))) break;
    long long h = a * h_prev + h_prev2;
    long long k = a * k_prev + k_prev2;
    if (k > (long long)1e12 || h < 0 || k <= 0) break;
    Convergent c;
    c.p = h;
    c.q = k;
    c.value = double(h) / double(k);
    double frac = x - af;
    if (frac <= 1e-12 * std::max(1.0, af)) {
      c.exact = true;
      all.push_back(c);
      terminated = true;
      break;
    }
    all.push_back(c);
    h_prev2 = h_prev;
    h_prev = h;
    k_prev2 = k_prev;
    k_prev = k;
    x = 1.0 / frac;
  }
  require(!all.empty(), errc::no_convergence, "no convergents produced");
  std::vector<Convergent> out;
  for (std::size_t j = 0; j < all.size(); ++j) {
    if (j >= 2) out.push_back(all[j]);
  }
  if (out.empty()) {
    // expansion shorter than three terms: keep the exact tail
    require(terminated, errc::internal, "short expansion without exact tail");
    out.push_back(all.back());
  }
  if (int(out.size()) > count) out.resize(std::size_t(count));
  for (auto& c : out) {
    require(std::gcd(c.p, c.q) == 1, errc::internal, "convergent not in lowest terms");
  }
  return out;
}

WitnessReport gapless_witness(const TwoQubitState& psi, const std::vector<int>& sizes,
                              double slack) {
  auto verdict = classify_phase(psi);
  require(verdict.kind == PhaseKind::GaplessEqualModuli, errc::not_gapless_class,
          "state is not in the equal-moduli class");
  WitnessReport out;
  for (int n : sizes) {
    require(n >= 2, errc::parameter_out_of_range, "size");
    WitnessEntry e;
    e.n = n;
    e.gap = spectral_gap(make_chain_spec(n, Boundary::open, {psi})).gap;
    e.bound = 1.0 / double(n - 1);
    e.satisfied = e.gap <= e.bound + slack;
    out.all_satisfied = out.all_satisfied && e.satisfied;
    out.entries.push_back(e);
  }
  return out;
}

}  // namespace ffc
