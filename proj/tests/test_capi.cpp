#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cmath>
#include <complex>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <string>

#include <nlohmann/json.hpp>

#include "ffchain.h"

using json = nlohmann::json;
using cxd = std::complex<double>;

namespace {

const double kPi = std::acos(-1.0);

const char* kSinglet =
    R"({"a00":[0,0],"a01":[0.7071067811865476,0],"a10":[-0.7071067811865476,0],"a11":[0,0]})";

std::string take(char* out) {
  REQUIRE(out != nullptr);
  std::string s(out);
  ffc_string_free(out);
  return s;
}

json take_json(char* out) { return json::parse(take(out)); }

std::string read_file(const std::filesystem::path& p) {
  std::ifstream f(p);
  REQUIRE(f.good());
  return std::string(std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>());
}

using Mat4 = std::array<std::array<cxd, 4>, 4>;

Mat4 zero4() {
  Mat4 m{};
  return m;
}

// m += w * v v^dagger
void add_outer(Mat4& m, const std::array<cxd, 4>& v, double w) {
  for (int i = 0; i < 4; ++i)
    for (int k = 0; k < 4; ++k) m[std::size_t(i)][std::size_t(k)] += w * v[std::size_t(i)] * std::conj(v[std::size_t(k)]);
}

std::string matrix_text(const Mat4& m) {
  json rows = json::array();
  for (const auto& r : m) {
    json row = json::array();
    for (const auto& z : r) row.push_back(json::array({z.real(), z.imag()}));
    rows.push_back(std::move(row));
  }
  return rows.dump();
}

}  // namespace

TEST_CASE("version string is non-empty and freeing null is a no-op") {
  REQUIRE(ffc_version() != nullptr);
  CHECK(std::string(ffc_version()) == "ffchain-0.1.0");
  ffc_string_free(nullptr);
}

TEST_CASE("state classification crosses the C boundary intact") {
  char* out = nullptr;
  REQUIRE(ffc_state_classify(kSinglet, &out) == FFC_OK);
  const json j = take_json(out);
  CHECK(j.at("schema_version") == 1);
  CHECK(j.at("kind") == "GaplessEqualModuli");
  const double m1 = std::hypot(j.at("mu1")[0].get<double>(), j.at("mu1")[1].get<double>());
  const double m2 = std::hypot(j.at("mu2")[0].get<double>(), j.at("mu2")[1].get<double>());
  CHECK(m1 == doctest::Approx(m2).epsilon(1e-12));
  CHECK(m1 > 0.0);
}

TEST_CASE("failures report invalid status with a message, success clears it") {
  char* out = nullptr;
  CHECK(ffc_state_classify("{not json", &out) == FFC_ERR_INVALID);
  CHECK(out == nullptr);
  CHECK_FALSE(std::string(ffc_last_error()).empty());
  CHECK(ffc_state_classify(nullptr, &out) == FFC_ERR_INVALID);
  CHECK(ffc_state_classify(R"({"a00":[0,0],"a01":[0,0],"a10":[0,0],"a11":[0,0]})", &out) ==
        FFC_ERR_INVALID);
  REQUIRE(ffc_state_classify(kSinglet, &out) == FFC_OK);
  ffc_string_free(out);
  CHECK(std::string(ffc_last_error()).empty());
}

TEST_CASE("chain handles expose gap, degeneracy and kernel") {
  const std::string chain =
      std::string(R"({"n":4,"boundary":"open","state":)") + kSinglet + "}";
  ffc_chain* h = nullptr;
  REQUIRE(ffc_chain_create(chain.c_str(), &h) == FFC_OK);
  REQUIRE(h != nullptr);

  char* out = nullptr;
  REQUIRE(ffc_chain_gap(h, "dense", 0.0, &out) == FFC_OK);
  const json g = take_json(out);
  CHECK(g.at("gap").get<double>() ==
        doctest::Approx(1.0 - std::cos(kPi / 4.0)).epsilon(1e-9));
  CHECK(g.at("kernel_dim") == 5);
  CHECK(g.at("n") == 4);
  CHECK(g.at("boundary") == "open");
  CHECK(g.at("method") == "dense");

  REQUIRE(ffc_chain_degeneracy(h, &out) == FFC_OK);
  const json d = take_json(out);
  CHECK(d.at("dim") == 5);
  CHECK(d.at("branch") == "open-entangled");

  REQUIRE(ffc_chain_kernel(h, "analytic", &out) == FFC_OK);
  const json k = take_json(out);
  CHECK(k.at("origin") == "analytic-entangled");
  CHECK(k.at("region") == json::array({1, 4}));
  REQUIRE(k.at("vectors").size() == 5);
  CHECK(k.at("vectors")[0].size() == 16);
  CHECK(k.at("residual").get<double>() <= 1e-9);

  CHECK(ffc_chain_gap(h, "simple", 0.0, &out) == FFC_ERR_INVALID);
  CHECK(ffc_chain_kernel(h, "magic", &out) == FFC_ERR_INVALID);
  CHECK(ffc_chain_gap(nullptr, "dense", 0.0, &out) == FFC_ERR_INVALID);
  ffc_chain_destroy(h);
  ffc_chain_destroy(nullptr);

  ffc_chain* bad = nullptr;
  CHECK(ffc_chain_create("{}", &bad) == FFC_ERR_INVALID);
  CHECK(bad == nullptr);
  CHECK(ffc_chain_create(nullptr, &bad) == FFC_ERR_INVALID);
}

TEST_CASE("continued fraction denominators survive serialization") {
  char* out = nullptr;
  REQUIRE(ffc_convergents(kPi - 3.0, 2, &out) == FFC_OK);
  const json j = take_json(out);
  const json& seq = j.at("convergents");
  REQUIRE(seq.size() == 2);
  CHECK(seq[0].at("p") == 15);
  CHECK(seq[0].at("q") == 106);
  CHECK(seq[1].at("p") == 16);
  CHECK(seq[1].at("q") == 113);
  CHECK_FALSE(seq[0].at("exact").get<bool>());
  CHECK(std::abs(seq[0].at("value").get<double>() - 15.0 / 106.0) < 1e-15);
  CHECK(ffc_convergents(-1.0, 3, &out) == FFC_ERR_INVALID);
  CHECK(ffc_convergents(0.5, 0, &out) == FFC_ERR_INVALID);
}

TEST_CASE("projector classification covers ranks one to three") {
  char* out = nullptr;

  Mat4 p1 = zero4();
  add_outer(p1, {0.0, 1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0), 0.0}, 1.0);
  REQUIRE(ffc_rank_classify(matrix_text(p1).c_str(), 0, &out) == FFC_OK);
  const json r1 = take_json(out);
  CHECK(r1.at("rank") == 1);
  CHECK(r1.at("phase").at("kind") == "GaplessEqualModuli");
  CHECK(r1.at("state").contains("a01"));

  const double d5 = std::sqrt(5.0);
  Mat4 p4 = zero4();
  add_outer(p4, {0.0, 0.0, 0.0, 1.0}, 1.0);
  add_outer(p4, {0.0, 1.0 / d5, -2.0 / d5, 0.0}, 1.0);
  REQUIRE(ffc_rank_classify(matrix_text(p4).c_str(), 0, &out) == FFC_OK);
  const json r4 = take_json(out);
  CHECK(r4.at("rank") == 2);
  CHECK(r4.at("case") == 4);
  CHECK(r4.at("f")[0].get<double>() == doctest::Approx(2.0).epsilon(1e-8));
  CHECK(std::abs(r4.at("f")[1].get<double>()) < 1e-8);
  CHECK(r4.at("gapped").get<bool>());
  REQUIRE_FALSE(r4.at("validated_nullity").empty());
  for (const auto& [n, dim] : r4.at("validated_nullity").items()) CHECK(dim == 2);

  const double d2 = std::sqrt(2.0);
  Mat4 heis = zero4();
  add_outer(heis, {0.0, 0.0, 0.0, 1.0}, 1.0);
  add_outer(heis, {0.0, 1.0 / d2, -1.0 / d2, 0.0}, 1.0);
  REQUIRE(ffc_rank_classify(matrix_text(heis).c_str(), 0, &out) == FFC_OK);
  const json rh = take_json(out);
  CHECK(rh.at("case") == 4);
  CHECK(rh.at("f")[0].get<double>() == doctest::Approx(1.0).epsilon(1e-8));
  CHECK_FALSE(rh.at("gapped").get<bool>());

  const std::array<cxd, 4> tau = {0.5, 0.5, 0.5, 0.5};
  Mat4 p3 = zero4();
  for (int i = 0; i < 4; ++i) p3[std::size_t(i)][std::size_t(i)] = 1.0;
  add_outer(p3, tau, -1.0);
  REQUIRE(ffc_rank_classify(matrix_text(p3).c_str(), 0, &out) == FFC_OK);
  const json r3 = take_json(out);
  CHECK(r3.at("rank") == 3);
  CHECK(r3.at("frustration_free").get<bool>());
  CHECK(r3.at("gap") == 1.0);
  const json& th = r3.at("theta");
  const cxd t0(th[0][0].get<double>(), th[0][1].get<double>());
  const cxd t1(th[1][0].get<double>(), th[1][1].get<double>());
  CHECK(std::abs(std::conj(t0) + std::conj(t1)) / d2 == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("scaled sums reduce to their range projector when asked") {
  const double d2 = std::sqrt(2.0);
  Mat4 m = zero4();
  add_outer(m, {0.0, 1.0 / d2, -1.0 / d2, 0.0}, 2.0);
  add_outer(m, {0.0, 1.0 / d2, 1.0 / d2, 0.0}, 0.5);
  const std::string text = matrix_text(m);

  char* out = nullptr;
  CHECK(ffc_rank_classify(text.c_str(), 0, &out) == FFC_ERR_INVALID);

  REQUIRE(ffc_rank_classify(text.c_str(), 1, &out) == FFC_OK);
  const json r = take_json(out);
  CHECK(r.at("rank") == 2);
  CHECK(r.at("case") == 2);
  CHECK(r.at("gapped").get<bool>());

  // 1-local projectors sit outside the nearest-neighbour taxonomy
  Mat4 local = zero4();
  local[2][2] = 1.0;
  local[3][3] = 1.0;
  CHECK(ffc_rank_classify(matrix_text(local).c_str(), 0, &out) == FFC_ERR_INVALID);
  CHECK_FALSE(std::string(ffc_last_error()).empty());

  CHECK(ffc_rank_classify("[[1,0],[0,1]]", 0, &out) == FFC_ERR_INVALID);
  CHECK(ffc_rank_classify(nullptr, 0, &out) == FFC_ERR_INVALID);
}

TEST_CASE("sweep outputs are deterministic for a fixed config") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "ffc_capi_sweep";
  fs::create_directories(dir);
  const fs::path csv = dir / "grid.csv";
  const std::string cfg = std::string("{\"kind\":\"phase\",\"family\":\"real-plus\",") +
                          "\"p\":{\"lo\":0.1,\"hi\":0.4,\"steps\":3}," +
                          "\"dtheta\":{\"lo\":0.2,\"hi\":1.4,\"steps\":3}," +
                          "\"n_list\":[4],\"workers\":2,\"plot_stub\":false," +
                          "\"csv\":\"" + csv.string() + "\"}";

  char* out = nullptr;
  REQUIRE(ffc_sweep_run(cfg.c_str(), &out) == FFC_OK);
  json m1 = take_json(out);
  const std::string csv1 = read_file(csv);
  REQUIRE(ffc_sweep_run(cfg.c_str(), &out) == FFC_OK);
  json m2 = take_json(out);
  const std::string csv2 = read_file(csv);

  CHECK(csv1 == csv2);
  m1.erase("wall_time_s");
  m2.erase("wall_time_s");
  CHECK(m1 == m2);
  CHECK(m1.at("rows") == 9);
  CHECK(m1.at("config_hash").get<std::string>().size() == 16);
  CHECK(fs::exists(fs::path(csv.string() + ".manifest.json")));
  CHECK_FALSE(fs::exists(fs::path(csv.string() + ".plot.py")));
  CHECK(csv1.rfind("p,dtheta,analytic_phase,tn_prop_identity_n4,gap_n4,gap_bound_n4,"
                   "within_bound_n4\n",
                   0) == 0);
}

TEST_CASE("degeneracy curve sweeps spot-check the predicted dimensions") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "ffc_capi_sweep";
  fs::create_directories(dir);
  const fs::path csv = dir / "curves.csv";
  const std::string cfg = std::string("{\"kind\":\"degeneracy-curves\",") +
                          "\"p\":{\"lo\":0.1,\"hi\":0.4,\"steps\":4}," +
                          "\"dtheta\":{\"lo\":0.2,\"hi\":1.4,\"steps\":4}," +
                          "\"n_list\":[6],\"workers\":2,\"plot_stub\":false," +
                          "\"csv\":\"" + csv.string() + "\"}";

  char* out = nullptr;
  REQUIRE(ffc_sweep_run(cfg.c_str(), &out) == FFC_OK);
  const json m = take_json(out);
  CHECK(m.at("spot_all_ok").get<bool>());
  CHECK(m.at("spot_checks").size() >= 1);
  for (const auto& sc : m.at("spot_checks")) {
    CHECK(sc.at("ok").get<bool>());
    CHECK(sc.at("numeric") == sc.at("expected"));
  }
  const std::string header = read_file(csv).substr(0, 45);
  CHECK(header.rfind("p,dtheta,tn_prop_identity_n6,degeneracy_n6\n", 0) == 0);

  const std::string two_sizes = std::string("{\"kind\":\"degeneracy-curves\",") +
                                "\"n_list\":[4,6],\"csv\":\"" + csv.string() + "\"}";
  CHECK(ffc_sweep_run(two_sizes.c_str(), &out) == FFC_ERR_INVALID);
  const std::string bad_grid = std::string("{\"kind\":\"phase\",") +
                               "\"p\":{\"lo\":0.1,\"hi\":0.9,\"steps\":3},\"csv\":\"" +
                               csv.string() + "\"}";
  CHECK(ffc_sweep_run(bad_grid.c_str(), &out) == FFC_ERR_INVALID);
  CHECK(ffc_sweep_run("{\"kind\":\"mystery\"}", &out) == FFC_ERR_INVALID);
}

TEST_CASE("verification suites run through the C boundary") {
  char* out = nullptr;
  REQUIRE(ffc_verify_suites(&out) == FFC_OK);
  const std::string names = take(out);
  CHECK(names.find("degeneracy") != std::string::npos);
  CHECK(names.find("knabe") != std::string::npos);
  CHECK(names.find("rank2") != std::string::npos);

  const char* cfg = R"({"suite":"degeneracy","trials":2,"seed":3,"n_lo":3,"n_hi":5,"workers":2})";
  REQUIRE(ffc_verify_run(cfg, &out) == FFC_OK);
  const json r = take_json(out);
  CHECK(r.at("suite") == "degeneracy");
  CHECK(r.at("all_pass").get<bool>());
  REQUIRE(r.at("checks").size() >= 1);
  for (const auto& c : r.at("checks")) {
    CHECK(c.at("pass").get<bool>());
    CHECK(c.contains("name"));
    CHECK(c.contains("seed"));
  }

  CHECK(ffc_verify_run(R"({"suite":"no-such-suite"})", &out) == FFC_ERR_INVALID);
  CHECK(ffc_verify_run(R"({"trials":3})", &out) == FFC_ERR_INVALID);
  CHECK(ffc_verify_run(nullptr, &out) == FFC_ERR_INVALID);
}
