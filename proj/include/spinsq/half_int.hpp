#pragma once

#include <compare>
#include <cstdlib>
#include <ostream>
#include <string>
#include <string_view>

namespace spinsq {

/// Angular momentum quantum number stored as twice its value, so that
/// 0, 1/2, 1, 3/2, ... are all exact.
class HalfInt {
 public:
  constexpr HalfInt() = default;
  constexpr HalfInt(int integer) : twice_(2 * integer) {}  // NOLINT(implicit)

  static constexpr HalfInt from_twice(int twice) {
    HalfInt h;
    h.twice_ = twice;
    return h;
  }

  /// Accepts "3/2", "-1/2", "1.5", "2".
  static HalfInt parse(std::string_view text);

  constexpr int twice() const { return twice_; }
  constexpr double value() const { return 0.5 * twice_; }
  constexpr bool is_integer() const { return twice_ % 2 == 0; }
  constexpr bool is_half_odd() const { return twice_ % 2 != 0; }

  /// Integer value; only meaningful when is_integer().
  constexpr int as_int() const { return twice_ / 2; }

  /// Dimension 2j+1 of the multiplet.
  constexpr int multiplicity() const { return twice_ + 1; }

  constexpr HalfInt operator-() const { return from_twice(-twice_); }
  constexpr HalfInt operator+(HalfInt o) const { return from_twice(twice_ + o.twice_); }
  constexpr HalfInt operator-(HalfInt o) const { return from_twice(twice_ - o.twice_); }
  constexpr HalfInt abs() const { return from_twice(twice_ < 0 ? -twice_ : twice_); }

  constexpr auto operator<=>(const HalfInt&) const = default;

  std::string str() const;

 private:
  int twice_ = 0;
};

inline std::ostream& operator<<(std::ostream& os, HalfInt h) { return os << h.str(); }

/// (j, m) are a valid pair: j >= 0, |m| <= j, j - m integer.
constexpr bool valid_projection(HalfInt j, HalfInt m) {
  return j.twice() >= 0 && (j.twice() - m.twice()) % 2 == 0 &&
         m.twice() <= j.twice() && -m.twice() <= j.twice();
}

/// Triangle rule |a - b| <= c <= a + b with a + b + c integer.
constexpr bool triangle(HalfInt a, HalfInt b, HalfInt c) {
  const int ta = a.twice(), tb = b.twice(), tc = c.twice();
  if (ta < 0 || tb < 0 || tc < 0) return false;
  if ((ta + tb + tc) % 2 != 0) return false;
  const int diff = ta > tb ? ta - tb : tb - ta;
  return diff <= tc && tc <= ta + tb;
}

}  // namespace spinsq
