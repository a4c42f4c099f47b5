#include "ffchain/chain.hpp"

namespace ffc {

const char* boundary_name(Boundary b) { return b == Boundary::open ? "open" : "periodic"; }

namespace {

void check_projector_override(const Eigen::Matrix4cd& P) {
  require((P - P.adjoint()).cwiseAbs().maxCoeff() <= 1e-10, errc::non_hermitian,
          "override projector not Hermitian");
  require((P * P - P).cwiseAbs().maxCoeff() <= 1e-10, errc::not_idempotent,
          "override projector not idempotent");
  int rank = int(std::lround(std::real(P.trace())));
  require(rank >= 1 && rank <= 3, errc::wrong_rank,
          "override projector rank must be 1..3, got " + std::to_string(rank));
}

}  // namespace

const TwoQubitState& ChainSpec::bond_state(int i) const {
  require(i >= 1 && i <= bond_count(), errc::index_out_of_range, "bond index");
  require(!bonds.empty(), errc::invalid_spec, "spec has no bond states");
  return homogeneous() ? bonds[0] : bonds[std::size_t(i - 1)];
}

Eigen::Matrix4cd ChainSpec::bond_projector(int i) const {
  if (projector_override) return *projector_override;
  const auto& psi = bond_state(i);
  return psi.a * psi.a.adjoint();
}

int ChainSpec::bond_count() const {
  return boundary == Boundary::open ? n - 1 : n;
}

ChainSpec make_chain_spec(int n, Boundary b, std::vector<TwoQubitState> bonds,
                          std::optional<Eigen::Matrix4cd> projector) {
  require(n >= 2, errc::invalid_spec, "chain needs at least two qubits");
  require(n <= 26, errc::dimension_too_large, "chain length capped at 26");
  if (projector) {
    check_projector_override(*projector);
    require(bonds.size() <= 1, errc::invalid_spec,
            "projector override excludes inhomogeneous bond states");
  } else {
    require(bonds.size() == 1 || bonds.size() == std::size_t(n - 1), errc::invalid_spec,
            "need one bond state or n-1 of them");
    require(bonds.size() == 1 || b == Boundary::open, errc::invalid_spec,
            "inhomogeneous chains are open only");
  }
  ChainSpec s;
  s.n = n;
  s.boundary = b;
  s.bonds = std::move(bonds);
  s.projector_override = std::move(projector);
  return s;
}

ChainOperator::ChainOperator(int n, std::vector<BondTerm> terms)
    : n_(n), terms_(std::move(terms)) {
  require(n >= 1 && n <= 26, errc::dimension_too_large, "operator qubit count");
  for (const auto& t : terms_) {
    require(t.i >= 1 && t.i <= n && t.j >= 1 && t.j <= n && t.i != t.j,
            errc::index_out_of_range, "bond qubit labels");
  }
}

void ChainOperator::apply(const Vector& x, Vector& y) const {
  require(x.size() == dim(), errc::dimension_mismatch, "vector length");
  y.setZero(dim());
  const int n = n_;
  for (const auto& t : terms_) {
    const int pi = n - t.i, pj = n - t.j;  // qubit -> bit position
    const int hi = std::max(pi, pj), lo = std::min(pi, pj);
    const std::ptrdiff_t quarter = dim() >> 2;
    const std::ptrdiff_t low_mask = (std::ptrdiff_t(1) << lo) - 1;
    const std::ptrdiff_t mid_mask = (std::ptrdiff_t(1) << (hi - 1)) - 1 - low_mask;
    const std::ptrdiff_t bit_i = std::ptrdiff_t(1) << pi;
    const std::ptrdiff_t bit_j = std::ptrdiff_t(1) << pj;
    for (std::ptrdiff_t m = 0; m < quarter; ++m) {
      const std::ptrdiff_t base = (m & low_mask) | ((m & mid_mask) << 1) |
                                  ((m & ~(low_mask | mid_mask)) << 2);
      cxd in[4], out[4];
      for (int a = 0; a < 4; ++a)
        in[a] = x(base | ((a & 2) ? bit_i : 0) | ((a & 1) ? bit_j : 0));
      for (int r = 0; r < 4; ++r) {
        out[r] = t.h(r, 0) * in[0] + t.h(r, 1) * in[1] + t.h(r, 2) * in[2] + t.h(r, 3) * in[3];
      }
      for (int a = 0; a < 4; ++a)
        y(base | ((a & 2) ? bit_i : 0) | ((a & 1) ? bit_j : 0)) += out[a];
    }
  }
}

LinOp ChainOperator::linop() const {
  return [this](const Vector& x, Vector& y) { apply(x, y); };
}

Matrix ChainOperator::dense() const {
  require(dim() <= kDenseDimCap, errc::dimension_too_large, "dense materialization cap");
  Matrix H = Matrix::Zero(dim(), dim());
  const int n = n_;
  for (const auto& t : terms_) {
    const std::ptrdiff_t bit_i = std::ptrdiff_t(1) << (n - t.i);
    const std::ptrdiff_t bit_j = std::ptrdiff_t(1) << (n - t.j);
    for (std::ptrdiff_t r = 0; r < dim(); ++r) {
      const int ri = (r & bit_i) ? 1 : 0, rj = (r & bit_j) ? 1 : 0;
      const std::ptrdiff_t rest = r & ~(bit_i | bit_j);
      for (int ci = 0; ci < 2; ++ci)
        for (int cj = 0; cj < 2; ++cj) {
          const std::ptrdiff_t c = rest | (ci ? bit_i : 0) | (cj ? bit_j : 0);
          H(r, c) += t.h(2 * ri + rj, 2 * ci + cj);
        }
    }
  }
  return H;
}

ChainOperator build_chain(const ChainSpec& spec) {
  std::vector<BondTerm> terms;
  for (int b = 1; b <= spec.bond_count(); ++b) {
    BondTerm t;
    t.i = b;
    t.j = b % spec.n + 1;
    t.h = spec.bond_projector(b);
    terms.push_back(std::move(t));
  }
  return ChainOperator(spec.n, std::move(terms));
}

ChainSpec restrict_region_spec(const ChainSpec& spec, int lo, int hi) {
  require(spec.boundary == Boundary::open, errc::invalid_spec,
          "region restriction is defined for open chains");
  require(lo >= 1 && hi <= spec.n && lo <= hi, errc::non_consecutive_region,
          "region [" + std::to_string(lo) + ", " + std::to_string(hi) + "] out of range");
  const int m = hi - lo + 1;
  require(m >= 2, errc::invalid_spec, "single-site region has no bond spec");
  std::vector<TwoQubitState> bonds;
  if (spec.projector_override) {
    return make_chain_spec(m, Boundary::open, {}, spec.projector_override);
  }
  if (spec.homogeneous()) {
    bonds = spec.bonds;
  } else {
    for (int b = lo; b <= hi - 1; ++b) bonds.push_back(spec.bond_state(b));
  }
  return make_chain_spec(m, Boundary::open, std::move(bonds));
}

ChainOperator restrict_region(const ChainSpec& spec, int lo, int hi) {
  require(spec.boundary == Boundary::open, errc::invalid_spec,
          "region restriction is defined for open chains");
  require(lo >= 1 && hi <= spec.n && lo <= hi, errc::non_consecutive_region,
          "region [" + std::to_string(lo) + ", " + std::to_string(hi) + "] out of range");
  if (lo == hi) return ChainOperator(1, {});
  return build_chain(restrict_region_spec(spec, lo, hi));
}

}  // namespace ffc
