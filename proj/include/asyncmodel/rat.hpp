#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/rational.hpp>

namespace asyncmodel {

/// Exact time value. Always kept in lowest terms with a positive denominator.
using Rat = boost::rational<std::int64_t>;

/// Parses "p" or "p/q" (q > 0). Throws model_error(parse_error) otherwise.
Rat parse_rat(std::string_view text);

/// Inverse of parse_rat: "p" when the denominator is 1, else "p/q".
std::string to_string(const Rat& r);

}  // namespace asyncmodel
