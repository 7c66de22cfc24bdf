#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace asyncmodel {

enum class errc {
  duplicate_transition_time,
  invalid_window,
  arity_mismatch,
  overlapping_intervals,
  precondition_violated,
  empty_meet,
  hypothesis_violated,
  block_arity_mismatch,
  invalid_blc,
  monotony_violated,
  distributivity_unverified,
  negative_delay,
  empty_bailc,
  unknown_theorem,
  parse_error,
  no_closed_form,
};

/// Stable CamelCase name used in diagnostics, e.g. "InvalidBlc".
std::string_view error_name(errc code);

class model_error : public std::runtime_error {
 public:
  model_error(errc code, const std::string& detail);

  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

}  // namespace asyncmodel
