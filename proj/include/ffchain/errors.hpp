#pragma once
#include <stdexcept>
#include <string>

namespace ffc {

enum class errc {
  invalid_argument,
  parse,
  zero_vector,
  non_hermitian,
  not_idempotent,
  wrong_rank,
  one_local_projector,
  dimension_too_large,
  dimension_mismatch,
  index_out_of_range,
  no_convergence,
  kernel_not_annihilated,
  conditioning,
  invalid_spec,
  non_consecutive_region,
  method_unavailable,
  parameter_out_of_range,
  product_state,
  not_gapless_class,
  site_collision,
  gauge_unavailable,
  partition_invalid,
  non_positive_value,
  not_unit_modulus,
  frustrated_case,
  regime_violation,
  internal,
};

class error : public std::runtime_error {
public:
  error(errc c, const std::string& msg) : std::runtime_error(msg), code_(c) {}
  errc code() const { return code_; }

private:
  errc code_;
};

[[noreturn]] inline void fail(errc c, const std::string& msg) { throw error(c, msg); }

inline void require(bool ok, errc c, const std::string& msg) {
  if (!ok) fail(c, msg);
}

}  // namespace ffc
