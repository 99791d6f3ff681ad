#include "spinsq/half_int.hpp"

#include <charconv>
#include <cmath>

#include "spinsq/errors.hpp"

namespace spinsq {

namespace {

int parse_int(std::string_view text, std::string_view whole) {
  int value = 0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  if (!text.empty() && text.front() == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last || first == last) {
    throw DomainError("not a half-integer: '" + std::string(whole) + "'");
  }
  return value;
}

}  // namespace

HalfInt HalfInt::parse(std::string_view text) {
  const std::string_view whole = text;
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    const int num = parse_int(text.substr(0, slash), whole);
    const int den = parse_int(text.substr(slash + 1), whole);
    if (den == 1) return HalfInt(num);
    if (den == 2) return from_twice(num);
    throw DomainError("not a half-integer: '" + std::string(whole) + "'");
  }
  if (text.find('.') != std::string_view::npos) {
    const double v = std::strtod(std::string(text).c_str(), nullptr);
    const double twice = 2.0 * v;
    if (!std::isfinite(twice) || std::abs(twice - std::round(twice)) > 1e-9) {
      throw DomainError("not a half-integer: '" + std::string(whole) + "'");
    }
    return from_twice(static_cast<int>(std::lround(twice)));
  }
  return HalfInt(parse_int(text, whole));
}

std::string HalfInt::str() const {
  if (is_integer()) return std::to_string(twice_ / 2);
  return std::to_string(twice_) + "/2";
}

}  // namespace spinsq
