#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>
#include <vector>

namespace spinsq::exact {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// n! as an arbitrary-precision integer. Requires n >= 0.
Integer factorial(int n);

/// Exact value of the form coeff * sqrt(radicand), radicand >= 0.
///
/// Every Clebsch-Gordan coefficient, 6-j symbol and Wigner small-d
/// coefficient has this form. Perfect-square radicands are folded into the
/// coefficient so that two equal values compare equal.
class Surd {
 public:
  Surd() = default;
  explicit Surd(Rational coeff, Rational radicand = 1);

  const Rational& coeff() const { return coeff_; }
  const Rational& radicand() const { return radicand_; }

  bool is_zero() const { return coeff_ == 0; }
  /// Value squared, with the sign of the value carried separately.
  Rational square() const { return coeff_ * coeff_ * radicand_; }
  int sign() const { return coeff_ > 0 ? 1 : (coeff_ < 0 ? -1 : 0); }

  double to_double() const;

  /// "-1/2*sqrt(2/3)" style rendering.
  std::string str() const;

  Surd operator-() const { return Surd(-coeff_, radicand_); }
  friend Surd operator*(const Surd& a, const Surd& b);

 private:
  Rational coeff_ = 0;
  Rational radicand_ = 1;
};

/// Exact square root of a non-negative rational when it is a perfect square.
bool rational_sqrt(const Rational& r, Rational& root);

/// A finite sum of surds, kept grouped by square class.
///
/// Surds whose radicands differ by a rational square factor are combined
/// exactly; sums over distinct square classes are linearly independent over
/// the rationals, so the sum is exactly zero iff every group cancels.
class SurdSum {
 public:
  void add(const Surd& term);

  bool is_zero() const;
  double to_double() const;

  /// The single surd this sum reduces to, if it lies in one square class.
  bool as_surd(Surd& out) const;

 private:
  struct Group {
    Rational coeff;
    Rational radicand;
  };
  std::vector<Group> groups_;
};

}  // namespace spinsq::exact
