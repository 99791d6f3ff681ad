#include "spinsq/exact.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>
#include <mutex>
#include <shared_mutex>

#include "spinsq/errors.hpp"

namespace spinsq::exact {

namespace bmp = boost::multiprecision;

Integer factorial(int n) {
  if (n < 0) throw DomainError("factorial of negative number");

  static std::shared_mutex mutex;
  static std::vector<Integer> table{Integer(1)};
  {
    std::shared_lock lock(mutex);
    if (static_cast<std::size_t>(n) < table.size()) return table[n];
  }
  std::unique_lock lock(mutex);
  while (table.size() <= static_cast<std::size_t>(n)) {
    table.push_back(table.back() * Integer(table.size()));
  }
  return table[n];
}

namespace {

bool integer_sqrt(const Integer& n, Integer& root) {
  if (n < 0) return false;
  root = bmp::sqrt(n);
  return root * root == n;
}

}  // namespace

bool rational_sqrt(const Rational& r, Rational& root) {
  Integer num_root, den_root;
  if (!integer_sqrt(bmp::numerator(r), num_root)) return false;
  if (!integer_sqrt(bmp::denominator(r), den_root)) return false;
  root = Rational(num_root, den_root);
  return true;
}

Surd::Surd(Rational coeff, Rational radicand) : coeff_(std::move(coeff)), radicand_(std::move(radicand)) {
  if (radicand_ < 0) throw DomainError("negative radicand");
  if (coeff_ == 0 || radicand_ == 0) {
    coeff_ = 0;
    radicand_ = 1;
    return;
  }
  Rational root;
  if (rational_sqrt(radicand_, root)) {
    coeff_ *= root;
    radicand_ = 1;
  }
}

double Surd::to_double() const {
  if (coeff_ == 0) return 0.0;
  // sqrt in extended precision keeps the last bit stable for large radicands.
  using Float = bmp::cpp_bin_float_double_extended;
  Float value = Float(bmp::numerator(coeff_)) / Float(bmp::denominator(coeff_));
  if (radicand_ != 1) {
    value *= bmp::sqrt(Float(bmp::numerator(radicand_)) / Float(bmp::denominator(radicand_)));
  }
  return static_cast<double>(value);
}

std::string Surd::str() const {
  if (coeff_ == 0) return "0";
  std::string out = coeff_.str();
  if (radicand_ != 1) out += "*sqrt(" + radicand_.str() + ")";
  return out;
}

Surd operator*(const Surd& a, const Surd& b) {
  return Surd(a.coeff_ * b.coeff_, a.radicand_ * b.radicand_);
}

void SurdSum::add(const Surd& term) {
  if (term.is_zero()) return;
  for (auto& g : groups_) {
    Rational ratio_root;
    if (rational_sqrt(term.radicand() / g.radicand, ratio_root)) {
      g.coeff += term.coeff() * ratio_root;
      return;
    }
  }
  groups_.push_back({term.coeff(), term.radicand()});
}

bool SurdSum::is_zero() const {
  for (const auto& g : groups_) {
    if (g.coeff != 0) return false;
  }
  return true;
}

double SurdSum::to_double() const {
  double total = 0.0;
  for (const auto& g : groups_) total += Surd(g.coeff, g.radicand).to_double();
  return total;
}

bool SurdSum::as_surd(Surd& out) const {
  const Group* found = nullptr;
  for (const auto& g : groups_) {
    if (g.coeff == 0) continue;
    if (found) return false;
    found = &g;
  }
  out = found ? Surd(found->coeff, found->radicand) : Surd();
  return true;
}

}  // namespace spinsq::exact
