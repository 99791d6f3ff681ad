#include "spinsq/angular.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <shared_mutex>
#include <tuple>
#include <vector>

#include "spinsq/errors.hpp"

namespace spinsq {

using exact::factorial;
using exact::Integer;
using exact::Rational;
using exact::Surd;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_two_pi(double x) {
  double r = std::fmod(x, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  if (r >= kTwoPi) r = 0.0;
  return r;
}

// Integer half of a sum of twice-values, which must be even.
int half(int twice) { return twice / 2; }

void require_magnitude(HalfInt j, const char* what) {
  if (j.twice() < 0) throw DomainError(std::string(what) + " must be non-negative, got " + j.str());
}

void require_parity(HalfInt j, HalfInt m) {
  require_magnitude(j, "angular momentum");
  if ((j.twice() - m.twice()) % 2 != 0) {
    throw DomainError("parity mismatch: j = " + j.str() + ", m = " + m.str());
  }
}

bool within(HalfInt j, HalfInt m) { return m.twice() <= j.twice() && -m.twice() <= j.twice(); }

// Square of the triangle coefficient Delta(abc).
Rational triangle_radicand(HalfInt a, HalfInt b, HalfInt c) {
  const int ta = a.twice(), tb = b.twice(), tc = c.twice();
  return Rational(factorial(half(ta + tb - tc)) * factorial(half(ta - tb + tc)) * factorial(half(-ta + tb + tc)),
                  factorial(half(ta + tb + tc) + 1));
}

int sign_of_power(int n) { return (n % 2 == 0) ? 1 : -1; }

// Floating-point values of exact coefficients, keyed by their six twice-values.
class CoefficientMemo {
 public:
  template <typename Compute>
  double get(const std::array<int, 6>& key, Compute&& compute) {
    {
      std::shared_lock lock(mutex_);
      if (auto it = values_.find(key); it != values_.end()) return it->second;
    }
    const double value = compute();
    std::unique_lock lock(mutex_);
    values_.emplace(key, value);
    return value;
  }

 private:
  std::shared_mutex mutex_;
  std::map<std::array<int, 6>, double> values_;
};

}  // namespace

EulerAngles::EulerAngles(double alpha, double beta, double gamma) {
  if (!std::isfinite(alpha) || !std::isfinite(beta) || !std::isfinite(gamma)) {
    throw DomainError("Euler angles must be finite");
  }
  beta = wrap_two_pi(beta);
  if (beta > std::numbers::pi) {
    beta = kTwoPi - beta;
    alpha += std::numbers::pi;
    gamma += std::numbers::pi;
  }
  alpha_ = wrap_two_pi(alpha);
  beta_ = beta;
  gamma_ = wrap_two_pi(gamma);
}

Eigen::Matrix3d rotation_matrix(const EulerAngles& angles) {
  using Eigen::AngleAxisd;
  using Eigen::Vector3d;
  return (AngleAxisd(angles.alpha(), Vector3d::UnitZ()) * AngleAxisd(angles.beta(), Vector3d::UnitY()) *
          AngleAxisd(angles.gamma(), Vector3d::UnitZ()))
      .toRotationMatrix();
}

EulerAngles euler_from_rotation(const Eigen::Matrix3d& r) {
  const double sin_beta = std::hypot(r(0, 2), r(1, 2));
  const double beta = std::atan2(sin_beta, r(2, 2));
  constexpr double kGimbal = 1e-12;
  if (sin_beta > kGimbal) {
    return EulerAngles(std::atan2(r(1, 2), r(0, 2)), beta, std::atan2(r(2, 1), -r(2, 0)));
  }
  if (r(2, 2) > 0.0) {
    return EulerAngles(std::atan2(r(1, 0), r(0, 0)), 0.0, 0.0);
  }
  return EulerAngles(std::atan2(-r(1, 0), -r(0, 0)), std::numbers::pi, 0.0);
}

// --- Clebsch-Gordan --------------------------------------------------------

Surd clebsch_gordan_exact(HalfInt j1, HalfInt j2, HalfInt j, HalfInt m1, HalfInt m2, HalfInt m) {
  require_parity(j1, m1);
  require_parity(j2, m2);
  require_parity(j, m);
  if (m1 + m2 != m) return Surd();
  if (!triangle(j1, j2, j)) return Surd();
  if (!within(j1, m1) || !within(j2, m2) || !within(j, m)) return Surd();

  const int tj1 = j1.twice(), tj2 = j2.twice(), tj = j.twice();
  const int tm1 = m1.twice(), tm2 = m2.twice(), tm = m.twice();

  Rational radicand = Rational(tj + 1) * triangle_radicand(j1, j2, j);
  radicand *= Rational(factorial(half(tj1 + tm1)) * factorial(half(tj1 - tm1)) * factorial(half(tj2 + tm2)) *
                       factorial(half(tj2 - tm2)) * factorial(half(tj + tm)) * factorial(half(tj - tm)));

  const int k_min = std::max({0, half(tj2 - tj - tm1), half(tj1 - tj + tm2)});
  const int k_max = std::min({half(tj1 + tj2 - tj), half(tj1 - tm1), half(tj2 + tm2)});
  Rational sum = 0;
  for (int k = k_min; k <= k_max; ++k) {
    const Integer den = factorial(k) * factorial(half(tj1 + tj2 - tj) - k) * factorial(half(tj1 - tm1) - k) *
                        factorial(half(tj2 + tm2) - k) * factorial(half(tj - tj2 + tm1) + k) *
                        factorial(half(tj - tj1 - tm2) + k);
    sum += Rational(sign_of_power(k), den);
  }
  return Surd(sum, radicand);
}

double clebsch_gordan(HalfInt j1, HalfInt j2, HalfInt j, HalfInt m1, HalfInt m2, HalfInt m) {
  static CoefficientMemo memo;
  if (m1 + m2 != m) {
    require_parity(j1, m1);
    require_parity(j2, m2);
    require_parity(j, m);
    return 0.0;
  }
  return memo.get({j1.twice(), j2.twice(), j.twice(), m1.twice(), m2.twice(), m.twice()},
                  [&] { return clebsch_gordan_exact(j1, j2, j, m1, m2, m).to_double(); });
}

// --- 6-j and Racah W -------------------------------------------------------

Surd wigner_6j_exact(HalfInt a, HalfInt b, HalfInt c, HalfInt d, HalfInt e, HalfInt f) {
  for (HalfInt x : {a, b, c, d, e, f}) require_magnitude(x, "6-j argument");
  if (!triangle(a, b, c) || !triangle(a, e, f) || !triangle(d, b, f) || !triangle(d, e, c)) return Surd();

  const int ta = a.twice(), tb = b.twice(), tc = c.twice();
  const int td = d.twice(), te = e.twice(), tf = f.twice();

  const Rational radicand =
      triangle_radicand(a, b, c) * triangle_radicand(a, e, f) * triangle_radicand(d, b, f) * triangle_radicand(d, e, c);

  const int abc = half(ta + tb + tc), aef = half(ta + te + tf), dbf = half(td + tb + tf), dec = half(td + te + tc);
  const int abde = half(ta + tb + td + te), acdf = half(ta + tc + td + tf), bcef = half(tb + tc + te + tf);

  const int t_min = std::max({abc, aef, dbf, dec});
  const int t_max = std::min({abde, acdf, bcef});
  Rational sum = 0;
  for (int t = t_min; t <= t_max; ++t) {
    const Integer den = factorial(t - abc) * factorial(t - aef) * factorial(t - dbf) * factorial(t - dec) *
                        factorial(abde - t) * factorial(acdf - t) * factorial(bcef - t);
    sum += Rational(sign_of_power(t) * factorial(t + 1), den);
  }
  return Surd(sum, radicand);
}

double wigner_6j(HalfInt a, HalfInt b, HalfInt c, HalfInt d, HalfInt e, HalfInt f) {
  static CoefficientMemo memo;
  return memo.get({a.twice(), b.twice(), c.twice(), d.twice(), e.twice(), f.twice()},
                  [&] { return wigner_6j_exact(a, b, c, d, e, f).to_double(); });
}

Surd racah_w_exact(HalfInt a, HalfInt b, HalfInt c, HalfInt d, HalfInt e, HalfInt f) {
  Surd six_j = wigner_6j_exact(a, b, e, d, c, f);
  if (six_j.is_zero()) return six_j;
  const int phase = half(a.twice() + b.twice() + c.twice() + d.twice());
  return phase % 2 == 0 ? six_j : -six_j;
}

double racah_w(HalfInt a, HalfInt b, HalfInt c, HalfInt d, HalfInt e, HalfInt f) {
  static CoefficientMemo memo;
  return memo.get({a.twice(), b.twice(), c.twice(), d.twice(), e.twice(), f.twice()},
                  [&] { return racah_w_exact(a, b, c, d, e, f).to_double(); });
}

// --- 9-j -------------------------------------------------------------------

namespace {

exact::SurdSum nine_j_sum(HalfInt a, HalfInt b, HalfInt c, HalfInt d, HalfInt e, HalfInt f, HalfInt g, HalfInt h,
                          HalfInt i) {
  for (HalfInt x : {a, b, c, d, e, f, g, h, i}) require_magnitude(x, "9-j argument");
  exact::SurdSum sum;
  if (!triangle(a, b, c) || !triangle(d, e, f) || !triangle(g, h, i) || !triangle(a, d, g) ||
      !triangle(b, e, h) || !triangle(c, f, i)) {
    return sum;
  }
  // x couples with (a, i), (d, h) and (b, f).
  const int lo = std::max({std::abs(a.twice() - i.twice()), std::abs(d.twice() - h.twice()),
                           std::abs(b.twice() - f.twice())});
  const int hi = std::min({a.twice() + i.twice(), d.twice() + h.twice(), b.twice() + f.twice()});
  for (int tx = lo; tx <= hi; tx += 2) {
    const HalfInt x = HalfInt::from_twice(tx);
    Surd term = wigner_6j_exact(a, b, c, f, i, x) * wigner_6j_exact(d, e, f, b, x, h) *
                wigner_6j_exact(g, h, i, x, a, d);
    if (term.is_zero()) continue;
    const int weight = (tx % 2 == 0 ? 1 : -1) * (tx + 1);
    sum.add(Surd(Rational(weight), 1) * term);
  }
  return sum;
}

}  // namespace

double wigner_9j(HalfInt j11, HalfInt j12, HalfInt j13, HalfInt j21, HalfInt j22, HalfInt j23, HalfInt j31,
                 HalfInt j32, HalfInt j33) {
  return nine_j_sum(j11, j12, j13, j21, j22, j23, j31, j32, j33).to_double();
}

std::optional<Surd> wigner_9j_exact(HalfInt j11, HalfInt j12, HalfInt j13, HalfInt j21, HalfInt j22, HalfInt j23,
                                    HalfInt j31, HalfInt j32, HalfInt j33) {
  Surd out;
  if (nine_j_sum(j11, j12, j13, j21, j22, j23, j31, j32, j33).as_surd(out)) return out;
  return std::nullopt;
}

// --- Wigner d / D ------------------------------------------------------------

namespace {

struct SmallDTerm {
  double coeff;
  int cos_power;
  int sin_power;
};

// Terms of d^j_{m'm}(beta) = sum_k coeff_k cos^a(beta/2) sin^b(beta/2).
const std::vector<SmallDTerm>& small_d_terms(HalfInt j, HalfInt mp, HalfInt m) {
  using Key = std::tuple<int, int, int>;
  static std::shared_mutex mutex;
  static std::map<Key, std::vector<SmallDTerm>> cache;

  const Key key{j.twice(), mp.twice(), m.twice()};
  {
    std::shared_lock lock(mutex);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }

  const int tj = j.twice(), tmp = mp.twice(), tm = m.twice();
  const Rational radicand(factorial(half(tj + tmp)) * factorial(half(tj - tmp)) * factorial(half(tj + tm)) *
                          factorial(half(tj - tm)));
  std::vector<SmallDTerm> terms;
  const int k_min = std::max(0, half(tm - tmp));
  const int k_max = std::min(half(tj + tm), half(tj - tmp));
  for (int k = k_min; k <= k_max; ++k) {
    const Integer den = factorial(half(tj + tm) - k) * factorial(k) * factorial(half(tj - tmp) - k) *
                        factorial(k + half(tmp - tm));
    const int sign = sign_of_power(k + half(tmp - tm));
    const Surd c(Rational(sign, den), radicand);
    terms.push_back({c.to_double(), half(2 * tj - 4 * k + tm - tmp), half(4 * k - tm + tmp)});
  }

  std::unique_lock lock(mutex);
  return cache.emplace(key, std::move(terms)).first->second;
}

void require_rotation_indices(HalfInt j, HalfInt mp, HalfInt m) {
  require_parity(j, mp);
  require_parity(j, m);
  if (!within(j, mp) || !within(j, m)) {
    throw DomainError("projection out of range for j = " + j.str());
  }
}

}  // namespace

double wigner_small_d(HalfInt j, HalfInt mp, HalfInt m, double beta) {
  require_rotation_indices(j, mp, m);
  const double c = std::cos(0.5 * beta);
  const double s = std::sin(0.5 * beta);
  double value = 0.0;
  for (const auto& term : small_d_terms(j, mp, m)) {
    value += term.coeff * std::pow(c, term.cos_power) * std::pow(s, term.sin_power);
  }
  return value;
}

std::complex<double> wigner_d(HalfInt j, HalfInt mp, HalfInt m, const EulerAngles& angles) {
  const double d = wigner_small_d(j, mp, m, angles.beta());
  const double phase = -(mp.value() * angles.alpha() + m.value() * angles.gamma());
  return d * std::complex<double>(std::cos(phase), std::sin(phase));
}

Eigen::MatrixXcd wigner_d_matrix(HalfInt j, const EulerAngles& angles) {
  require_magnitude(j, "rank");
  const int n = j.multiplicity();
  Eigen::MatrixXcd out(n, n);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      out(r, c) = wigner_d(j, HalfInt::from_twice(j.twice() - 2 * r), HalfInt::from_twice(j.twice() - 2 * c), angles);
    }
  }
  return out;
}

}  // namespace spinsq
