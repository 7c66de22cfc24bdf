#include "asyncmodel/rat.hpp"

#include <charconv>

#include "asyncmodel/error.hpp"

namespace asyncmodel {

namespace {

std::int64_t parse_int(std::string_view text, std::string_view whole) {
  std::int64_t value = 0;
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (text.empty() || ec != std::errc() || ptr != last) {
    throw model_error(errc::parse_error, "not a rational: \"" + std::string(whole) + "\"");
  }
  return value;
}

}  // namespace

Rat parse_rat(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rat(parse_int(text, text));
  const auto num = parse_int(text.substr(0, slash), text);
  const auto den = parse_int(text.substr(slash + 1), text);
  if (den <= 0) {
    throw model_error(errc::parse_error, "denominator must be positive: \"" + std::string(text) + "\"");
  }
  return Rat(num, den);
}

std::string to_string(const Rat& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

}  // namespace asyncmodel
