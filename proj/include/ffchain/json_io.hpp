#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "ffchain/chain.hpp"
#include "ffchain/groundspace.hpp"
#include "ffchain/rank_projectors.hpp"
#include "ffchain/spectral.hpp"
#include "ffchain/states.hpp"
#include "ffchain/verify.hpp"

namespace ffc::io {

using nlohmann::json;

inline constexpr int kSchemaVersion = 1;

json complex_to_json(cxd z);
cxd complex_from_json(const json& j);

// state literal {"a00":[re,im],"a01":[re,im],"a10":[re,im],"a11":[re,im]}
json state_to_json(const TwoQubitState& s);
TwoQubitState state_from_json(const json& j);
TwoQubitState state_from_string(const std::string& text);

// nested rows of [re,im] pairs
json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const json& j);

// {"n":…,"boundary":"open"|"periodic","state":…|"states":[…],"projector":…}
json chain_spec_to_json(const ChainSpec& spec);
ChainSpec chain_spec_from_json(const json& j);
ChainSpec chain_spec_from_string(const std::string& text);

json phase_verdict_to_json(const PhaseVerdict& v);
json gap_to_json(const GapResult& g);
json degeneracy_to_json(const DegeneracyResult& d);
json convergents_to_json(const std::vector<Convergent>& seq);
json basis_to_json(const KernelBasis& b, int n);
json rank2_to_json(const Rank2Verdict& v);
json rank3_to_json(const Rank3Verdict& v);
json report_to_json(const SuiteReport& r);

json parse_text(const std::string& text);  // wraps parse errors into errc::parse

}  // namespace ffc::io
