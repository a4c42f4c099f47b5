#include "ffchain/json_io.hpp"

namespace ffc::io {

json parse_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    fail(errc::parse, std::string("malformed JSON: ") + e.what());
  }
}

json complex_to_json(cxd z) { return json::array({z.real(), z.imag()}); }

cxd complex_from_json(const json& j) {
  if (j.is_number()) return cxd(j.get<double>(), 0.0);
  require(j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number(), errc::parse,
          "complex values are numbers or [re,im] pairs");
  return cxd(j[0].get<double>(), j[1].get<double>());
}

json state_to_json(const TwoQubitState& s) {
  return json{{"a00", complex_to_json(s.a(0))},
              {"a01", complex_to_json(s.a(1))},
              {"a10", complex_to_json(s.a(2))},
              {"a11", complex_to_json(s.a(3))}};
}

TwoQubitState state_from_json(const json& j) {
  require(j.is_object(), errc::parse, "state literal must be a JSON object");
  static const char* keys[4] = {"a00", "a01", "a10", "a11"};
  Eigen::Vector4cd a;
  for (int i = 0; i < 4; ++i) {
    require(j.contains(keys[i]), errc::parse,
            std::string("state literal missing key ") + keys[i]);
    a(i) = complex_from_json(j.at(keys[i]));
  }
  return make_state(a);
}

TwoQubitState state_from_string(const std::string& text) {
  return state_from_json(parse_text(text));
}

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (std::ptrdiff_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::ptrdiff_t k = 0; k < m.cols(); ++k) row.push_back(complex_to_json(m(i, k)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const json& j) {
  require(j.is_array() && !j.empty(), errc::parse, "matrix must be an array of rows");
  const std::ptrdiff_t rows = std::ptrdiff_t(j.size());
  require(j[0].is_array() && !j[0].empty(), errc::parse, "matrix rows must be arrays");
  const std::ptrdiff_t cols = std::ptrdiff_t(j[0].size());
  Matrix m(rows, cols);
  for (std::ptrdiff_t i = 0; i < rows; ++i) {
    require(j[std::size_t(i)].is_array() &&
                std::ptrdiff_t(j[std::size_t(i)].size()) == cols,
            errc::parse, "ragged matrix rows");
    for (std::ptrdiff_t k = 0; k < cols; ++k)
      m(i, k) = complex_from_json(j[std::size_t(i)][std::size_t(k)]);
  }
  return m;
}

json chain_spec_to_json(const ChainSpec& spec) {
  json out{{"n", spec.n}, {"boundary", boundary_name(spec.boundary)}};
  if (spec.homogeneous()) {
    out["state"] = state_to_json(spec.bonds[0]);
  } else {
    json arr = json::array();
    for (const auto& b : spec.bonds) arr.push_back(state_to_json(b));
    out["states"] = arr;
  }
  if (spec.projector_override) out["projector"] = matrix_to_json(*spec.projector_override);
  return out;
}

ChainSpec chain_spec_from_json(const json& j) {
  require(j.is_object() && j.contains("n") && j.at("n").is_number_integer(), errc::parse,
          "chain spec needs an integer n");
  const int n = j.at("n").get<int>();
  Boundary b = Boundary::open;
  if (j.contains("boundary")) {
    const std::string name = j.at("boundary").get<std::string>();
    if (name == "open")
      b = Boundary::open;
    else if (name == "periodic")
      b = Boundary::periodic;
    else
      fail(errc::parse, "boundary must be open or periodic");
  }
  std::vector<TwoQubitState> bonds;
  if (j.contains("states")) {
    require(j.at("states").is_array(), errc::parse, "states must be an array");
    for (const auto& s : j.at("states")) bonds.push_back(state_from_json(s));
  } else if (j.contains("state")) {
    bonds.push_back(state_from_json(j.at("state")));
  } else {
    fail(errc::parse, "chain spec needs state or states");
  }
  std::optional<Eigen::Matrix4cd> proj;
  if (j.contains("projector")) {
    const Matrix m = matrix_from_json(j.at("projector"));
    require(m.rows() == 4 && m.cols() == 4, errc::parse, "projector must be 4x4");
    proj = Eigen::Matrix4cd(m);
  }
  return make_chain_spec(n, b, std::move(bonds), std::move(proj));
}

ChainSpec chain_spec_from_string(const std::string& text) {
  return chain_spec_from_json(parse_text(text));
}

json phase_verdict_to_json(const PhaseVerdict& v) {
  return json{{"schema_version", kSchemaVersion},
              {"kind", phase_kind_name(v.kind)},
              {"mu1", complex_to_json(v.mu1)},
              {"mu2", complex_to_json(v.mu2)},
              {"near_boundary", v.boundary},
              {"detail", v.detail}};
}

json gap_to_json(const GapResult& g) {
  return json{{"schema_version", kSchemaVersion},
              {"gap", g.gap},
              {"n", g.n},
              {"boundary", boundary_name(g.boundary)},
              {"method", g.method},
              {"kernel_dim", g.kernel_dim},
              {"residual", g.residual}};
}

json degeneracy_to_json(const DegeneracyResult& d) {
  return json{{"schema_version", kSchemaVersion}, {"dim", d.dim}, {"branch", d.branch}};
}

json convergents_to_json(const std::vector<Convergent>& seq) {
  json arr = json::array();
  for (const auto& c : seq)
    arr.push_back(json{{"p", c.p}, {"q", c.q}, {"value", c.value}, {"exact", c.exact}});
  return json{{"schema_version", kSchemaVersion}, {"convergents", arr}};
}

json basis_to_json(const KernelBasis& b, int n) {
  json vecs = json::array();
  for (const auto& v : b.vectors) {
    json amps = json::array();
    for (std::ptrdiff_t i = 0; i < v.size(); ++i) amps.push_back(complex_to_json(v(i)));
    vecs.push_back(std::move(amps));
  }
  return json{{"schema_version", kSchemaVersion},
              {"origin", b.origin},
              {"residual", b.residual},
              {"region", json::array({1, n})},
              {"vectors", vecs}};
}

namespace {
json qubit_state_to_json(const Eigen::Vector2cd& v) {
  return json::array({complex_to_json(v(0)), complex_to_json(v(1))});
}
}  // namespace

json rank2_to_json(const Rank2Verdict& v) {
  json out{{"schema_version", kSchemaVersion}, {"case", v.case_id}};
  out["alpha"] = v.has_alpha ? qubit_state_to_json(v.alpha) : json(nullptr);
  out["beta"] = v.has_beta ? qubit_state_to_json(v.beta) : json(nullptr);
  out["f"] = v.case_id == 4 ? complex_to_json(v.f) : json(nullptr);
  out["gapped"] = v.case_id == 5 ? json(nullptr) : json(v.gapped);
  json nl = json::object();
  for (const auto& [n, dim] : v.validated_nullity) nl[std::to_string(n)] = dim;
  out["validated_nullity"] = nl;
  return out;
}

json rank3_to_json(const Rank3Verdict& v) {
  json out{{"schema_version", kSchemaVersion},
           {"rank", 3},
           {"frustration_free", v.frustration_free}};
  out["theta"] = v.has_theta ? qubit_state_to_json(v.theta) : json(nullptr);
  if (v.frustration_free) out["gap"] = 1.0;
  return out;
}

json report_to_json(const SuiteReport& r) {
  json checks = json::array();
  for (const auto& c : r.checks)
    checks.push_back(json{{"name", c.name},
                          {"n", c.n},
                          {"value", c.value},
                          {"bound", c.bound},
                          {"pass", c.pass},
                          {"seed", c.seed}});
  return json{{"schema_version", kSchemaVersion},
              {"suite", r.suite},
              {"all_pass", r.all_pass},
              {"checks", checks}};
}

}  // namespace ffc::io
