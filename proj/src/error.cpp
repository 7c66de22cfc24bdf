#include "asyncmodel/error.hpp"

namespace asyncmodel {

std::string_view error_name(errc code) {
  switch (code) {
    case errc::duplicate_transition_time: return "DuplicateTransitionTime";
    case errc::invalid_window: return "InvalidWindow";
    case errc::arity_mismatch: return "ArityMismatch";
    case errc::overlapping_intervals: return "OverlappingIntervals";
    case errc::precondition_violated: return "PreconditionViolated";
    case errc::empty_meet: return "EmptyMeet";
    case errc::hypothesis_violated: return "HypothesisViolated";
    case errc::block_arity_mismatch: return "BlockArityMismatch";
    case errc::invalid_blc: return "InvalidBlc";
    case errc::monotony_violated: return "MonotonyViolated";
    case errc::distributivity_unverified: return "DistributivityUnverified";
    case errc::negative_delay: return "NegativeDelay";
    case errc::empty_bailc: return "EmptyBailc";
    case errc::unknown_theorem: return "UnknownTheorem";
    case errc::parse_error: return "ParseError";
    case errc::no_closed_form: return "NoClosedForm";
  }
  return "Error";
}

model_error::model_error(errc code, const std::string& detail)
    : std::runtime_error(std::string(error_name(code)) + ": " + detail), code_(code) {}

}  // namespace asyncmodel
