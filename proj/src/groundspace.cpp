#include "ffchain/groundspace.hpp"

#include <bit>
#include <cmath>

namespace ffc {

namespace {

double binom(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * double(n - k + i) / double(i);
  return r;
}

double spectral_norm_2x2(const Eigen::Matrix2cd& M) {
  Eigen::JacobiSVD<Eigen::Matrix2cd> svd(M);
  return svd.singularValues()(0);
}

double max_residual(const ChainSpec& spec, const std::vector<Vector>& basis) {
  auto H = build_chain(spec);
  double worst = 0.0;
  Vector y(H.dim());
  for (const auto& g : basis) {
    H.apply(g, y);
    worst = std::max(worst, y.norm());
  }
  return worst;
}

bool analytic_available(const ChainSpec& spec) {
  if (spec.boundary != Boundary::open || !spec.homogeneous() || spec.projector_override)
    return false;
  const auto& psi = spec.bonds[0];
  if (is_entangled(psi)) return true;
  auto sd = schmidt(psi);
  // product bond works unless the two factors are parallel (symmetric product)
  double overlap = std::abs(sd.w0.dot(sd.v0));
  return overlap < 1.0 - 1e-10;
}

KernelBasis kernel_analytic_entangled(const ChainSpec& spec, double tol) {
  const int n = spec.n;
  auto tm = transfer_matrix(spec.bonds[0]);
  std::vector<Eigen::Matrix2cd> site_ops(static_cast<std::size_t>(n));
  Eigen::Matrix2cd acc = Eigen::Matrix2cd::Identity();
  for (int i = 0; i < n; ++i) {
    site_ops[std::size_t(i)] = acc / spectral_norm_2x2(acc);
    acc = acc * tm.T;
  }
  std::vector<Vector> imgs;
  for (auto& d : symmetric_basis(n)) {
    Vector v = std::move(d);
    for (int site = 1; site <= n; ++site)
      v = apply_single_qubit(v, n, site, site_ops[std::size_t(site - 1)]);
    imgs.push_back(std::move(v));
  }
  KernelBasis out;
  out.vectors = orthonormalize(imgs, tol);
  require(int(out.vectors.size()) == n + 1, errc::conditioning,
          "transfer-power image of the symmetric subspace lost rank (got " +
              std::to_string(out.vectors.size()) + ", want " + std::to_string(n + 1) + ")");
  out.origin = "analytic-entangled";
  out.residual = max_residual(spec, out.vectors);
  return out;
}

KernelBasis kernel_analytic_product(const ChainSpec& spec) {
  const int n = spec.n;
  auto sd = schmidt(spec.bonds[0]);
  Eigen::Vector2cd w = sd.w0, u = sd.v0;
  // basis change sending the first factor to |1>; then the second factor fixes v
  Eigen::Matrix2cd W;
  W << -w(1), w(0), std::conj(w(0)), std::conj(w(1));
  Eigen::Vector2cd b = W * u;
  const double s = std::abs(b(0));
  require(s > 1e-10, errc::method_unavailable,
          "symmetric product bond: domain-wall basis undefined");
  const cxd phase = b(0) / s;
  const cxd c = -std::conj(b(1) / phase);
  Eigen::Vector2cd v(c, s), vperp(s, -std::conj(c));
  Eigen::Matrix2cd Wd = W.adjoint();
  const Eigen::Vector2cd f_zero = Wd * Eigen::Vector2cd(1.0, 0.0);
  const Eigen::Vector2cd f_v = Wd * v;
  const Eigen::Vector2cd f_vperp = Wd * vperp;

  KernelBasis out;
  for (int i = 0; i <= n; ++i) {
    std::vector<Eigen::Vector2cd> factors;
    for (int site = 1; site <= n; ++site) {
      if (i == 0 || site > i)
        factors.push_back(f_v);
      else if (site < i)
        factors.push_back(f_zero);
      else
        factors.push_back(f_vperp);
    }
    out.vectors.push_back(product_state_vector(factors));
  }
  out.origin = "analytic-product";
  out.residual = max_residual(spec, out.vectors);
  return out;
}

KernelBasis kernel_numeric(const ChainSpec& spec, double tol) {
  require(spec.n <= 12, errc::dimension_too_large, "numeric kernel capped at 12 qubits");
  auto H = build_chain(spec).dense();
  auto eig = eig_hermitian_dense(H);
  const double cut = tol * std::max(1.0, eig.values(eig.values.size() - 1));
  KernelBasis out;
  for (std::ptrdiff_t i = 0; i < eig.values.size(); ++i) {
    if (eig.values(i) <= cut) {
      out.vectors.push_back(eig.vectors.col(i));
      out.residual = std::max(out.residual, std::abs(eig.values(i)));
    }
  }
  out.origin = "numeric";
  return out;
}

}  // namespace

std::vector<Vector> symmetric_basis(int n) {
  require(n >= 1 && n <= 26, errc::dimension_too_large, "qubit count");
  const std::ptrdiff_t dim = std::ptrdiff_t(1) << n;
  std::vector<Vector> out;
  for (int k = 0; k <= n; ++k) {
    Vector d = Vector::Zero(dim);
    const double w = 1.0 / std::sqrt(binom(n, k));
    for (std::ptrdiff_t b = 0; b < dim; ++b)
      if (std::popcount(std::uint64_t(b)) == k) d(b) = w;
    out.push_back(std::move(d));
  }
  return out;
}

Vector apply_single_qubit(const Vector& x, int n, int site, const Eigen::Matrix2cd& M) {
  require(site >= 1 && site <= n, errc::index_out_of_range, "site");
  require(x.size() == (std::ptrdiff_t(1) << n), errc::dimension_mismatch, "vector length");
  const std::ptrdiff_t bit = std::ptrdiff_t(1) << (n - site);
  Vector y(x.size());
  for (std::ptrdiff_t b = 0; b < x.size(); ++b) {
    if (b & bit) continue;
    const cxd x0 = x(b), x1 = x(b | bit);
    y(b) = M(0, 0) * x0 + M(0, 1) * x1;
    y(b | bit) = M(1, 0) * x0 + M(1, 1) * x1;
  }
  return y;
}

Vector product_state_vector(const std::vector<Eigen::Vector2cd>& factors) {
  require(!factors.empty() && factors.size() <= 26, errc::dimension_too_large, "factor count");
  Vector v = Vector::Ones(1);
  for (const auto& f : factors) {
    Vector next(v.size() * 2);
    for (std::ptrdiff_t i = 0; i < v.size(); ++i) {
      next(2 * i) = v(i) * f(0);
      next(2 * i + 1) = v(i) * f(1);
    }
    v = std::move(next);
  }
  return v;
}

KernelBasis kernel_basis(const ChainSpec& spec, KernelMethod method, double tol) {
  if (method == KernelMethod::numeric) return kernel_numeric(spec, tol);
  const bool analytic_ok = analytic_available(spec) && spec.n <= 22;
  if (method == KernelMethod::analytic) {
    require(analytic_ok, errc::method_unavailable,
            "analytic kernel needs an open homogeneous rank-1 chain with a "
            "non-symmetric bond state");
    return is_entangled(spec.bonds[0]) ? kernel_analytic_entangled(spec, tol)
                                       : kernel_analytic_product(spec);
  }
  if (analytic_ok)
    return is_entangled(spec.bonds[0]) ? kernel_analytic_entangled(spec, tol)
                                       : kernel_analytic_product(spec);
  return kernel_numeric(spec, tol);
}

DegeneracyResult degeneracy(const ChainSpec& spec) {
  const bool rank1 = !spec.projector_override;
  if (rank1 && spec.homogeneous()) {
    const auto& psi = spec.bonds[0];
    if (spec.boundary == Boundary::open) {
      if (is_entangled(psi)) return {spec.n + 1, "open-entangled"};
      if (analytic_available(spec)) return {spec.n + 1, "open-product-domain-wall"};
    } else if (is_entangled(psi)) {
      auto tp = tpow_prop_identity(psi, spec.n);
      return {tp.proportional ? spec.n + 1 : 2,
              tp.proportional ? "periodic-power-scalar" : "periodic-generic"};
    }
  }
  auto kb = kernel_numeric(spec, 1e-8);
  return {int(kb.vectors.size()), "numeric"};
}

KernelBasis region_kernel(const ChainSpec& spec, int lo, int hi, KernelMethod method) {
  require(lo >= 1 && hi <= spec.n && lo <= hi, errc::non_consecutive_region, "region bounds");
  if (lo == hi) {
    KernelBasis out;
    out.vectors = {Vector::Unit(2, 0), Vector::Unit(2, 1)};
    out.origin = "trivial";
    return out;
  }
  return kernel_basis(restrict_region_spec(spec, lo, hi), method);
}

Vector region_projector_apply(const ChainSpec& spec, int lo, int hi, const Vector& x,
                              KernelMethod method) {
  const int n = spec.n;
  require(x.size() == (std::ptrdiff_t(1) << n), errc::dimension_mismatch, "vector length");
  auto kb = region_kernel(spec, lo, hi, method);
  const int m = hi - lo + 1;
  const std::ptrdiff_t dr = std::ptrdiff_t(1) << (n - hi);   // bits right of the region
  const std::ptrdiff_t dm = std::ptrdiff_t(1) << m;
  const std::ptrdiff_t dl = std::ptrdiff_t(1) << (lo - 1);   // bits left of the region
  Vector y = Vector::Zero(x.size());
  for (const auto& g : kb.vectors) {
    for (std::ptrdiff_t l = 0; l < dl; ++l) {
      for (std::ptrdiff_t r = 0; r < dr; ++r) {
        cxd coef = 0.0;
        for (std::ptrdiff_t s = 0; s < dm; ++s)
          coef += std::conj(g(s)) * x((l * dm + s) * dr + r);
        for (std::ptrdiff_t s = 0; s < dm; ++s) y((l * dm + s) * dr + r) += g(s) * coef;
      }
    }
  }
  return y;
}

std::vector<int> dimension_sequence(const std::vector<TwoQubitState>& bonds, int n_max) {
  require(n_max >= 1, errc::parameter_out_of_range, "n_max");
  require(!bonds.empty(), errc::invalid_spec, "need at least one bond state");
  require(bonds.size() == 1 || int(bonds.size()) >= n_max - 1, errc::invalid_spec,
          "need n_max - 1 bond states for an inhomogeneous sequence");
  std::vector<int> out{2};  // single qubit: no constraints
  for (int n = 2; n <= n_max; ++n) {
    std::vector<TwoQubitState> prefix;
    if (bonds.size() == 1)
      prefix = bonds;
    else
      prefix.assign(bonds.begin(), bonds.begin() + (n - 1));
    auto spec = make_chain_spec(n, Boundary::open, std::move(prefix));
    out.push_back(int(kernel_numeric(spec, 1e-8).vectors.size()));
  }
  return out;
}

Matrix kernel_projector_dense(const ChainSpec& spec, KernelMethod method, double tol) {
  auto kb = kernel_basis(spec, method, tol);
  const std::ptrdiff_t dim = std::ptrdiff_t(1) << spec.n;
  Matrix G = Matrix::Zero(dim, dim);
  for (const auto& g : kb.vectors) G += g * g.adjoint();
  return G;
}

}  // namespace ffc
