#pragma once

// Shared generators and floating-point reference implementations for the
// unit suites. Nothing here calls into the library's own coefficient code.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include "spinsq/density.hpp"
#include "spinsq/half_int.hpp"

namespace testsupport {

using cd = std::complex<double>;
using spinsq::HalfInt;

inline double lfact(double n) { return std::lgamma(n + 1.0); }

inline bool closes(double a, double b, double c) {
  const double s = a + b + c;
  return c >= std::abs(a - b) - 1e-9 && c <= a + b + 1e-9 && std::abs(s - std::round(s)) < 1e-9;
}

// Racah closed form evaluated in log space.
inline double cg_ref(double j1, double j2, double j, double m1, double m2, double m) {
  if (std::abs(m1 + m2 - m) > 1e-9 || !closes(j1, j2, j)) return 0.0;
  if (std::abs(m1) > j1 + 1e-9 || std::abs(m2) > j2 + 1e-9 || std::abs(m) > j + 1e-9) return 0.0;
  const double pre = 0.5 * (std::log(2 * j + 1) + lfact(j1 + j2 - j) + lfact(j1 - j2 + j) + lfact(-j1 + j2 + j) -
                            lfact(j1 + j2 + j + 1) + lfact(j1 + m1) + lfact(j1 - m1) + lfact(j2 + m2) +
                            lfact(j2 - m2) + lfact(j + m) + lfact(j - m));
  double sum = 0.0;
  for (int k = 0; k <= 200; ++k) {
    const double a = j1 + j2 - j - k, b = j1 - m1 - k, c = j2 + m2 - k;
    const double d = j - j2 + m1 + k, e = j - j1 - m2 + k;
    if (a < -1e-9 || b < -1e-9 || c < -1e-9) break;
    if (d < -1e-9 || e < -1e-9) continue;
    const double term = std::exp(pre - lfact(k) - lfact(a) - lfact(b) - lfact(c) - lfact(d) - lfact(e));
    sum += (k % 2 == 0 ? 1.0 : -1.0) * term;
  }
  return sum;
}

inline double delta_log(double a, double b, double c) {
  return 0.5 * (lfact(a + b - c) + lfact(a - b + c) + lfact(-a + b + c) - lfact(a + b + c + 1));
}

inline double sixj_ref(double a, double b, double c, double d, double e, double f) {
  if (!closes(a, b, c) || !closes(a, e, f) || !closes(d, b, f) || !closes(d, e, c)) return 0.0;
  const double pre = delta_log(a, b, c) + delta_log(a, e, f) + delta_log(d, b, f) + delta_log(d, e, c);
  const double lo = std::max({a + b + c, a + e + f, d + b + f, d + e + c});
  const double hi = std::min({a + b + d + e, a + c + d + f, b + c + e + f});
  double sum = 0.0;
  for (double t = lo; t <= hi + 1e-9; t += 1.0) {
    const int ti = static_cast<int>(std::lround(t));
    const double term = std::exp(pre + lfact(t + 1) - lfact(t - a - b - c) - lfact(t - a - e - f) -
                                 lfact(t - d - b - f) - lfact(t - d - e - c) - lfact(a + b + d + e - t) -
                                 lfact(a + c + d + f - t) - lfact(b + c + e + f - t));
    sum += (ti % 2 == 0 ? 1.0 : -1.0) * term;
  }
  return sum;
}

inline double ninej_ref(double a, double b, double c, double d, double e, double f, double g, double h, double i) {
  const double lo = std::max({std::abs(a - i), std::abs(d - h), std::abs(b - f)});
  const double hi = std::min({a + i, d + h, b + f});
  double sum = 0.0;
  for (double x = lo; x <= hi + 1e-9; x += 1.0) {
    const double sign = (std::lround(2 * x) % 2 == 0) ? 1.0 : -1.0;
    sum += sign * (2 * x + 1) * sixj_ref(a, b, c, f, i, x) * sixj_ref(d, e, f, b, x, h) *
           sixj_ref(g, h, i, x, a, d);
  }
  return sum;
}

// Spin matrices from <m+1|S+|m> = sqrt(s(s+1) - m(m+1)), basis m = s..-s.
struct RefSpin {
  Eigen::MatrixXcd x, y, z;
};

inline RefSpin ref_spin(double s) {
  const int n = static_cast<int>(std::lround(2 * s)) + 1;
  Eigen::MatrixXcd plus = Eigen::MatrixXcd::Zero(n, n);
  Eigen::MatrixXcd z = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    const double m = s - i;
    z(i, i) = m;
    if (i > 0) plus(i - 1, i) = std::sqrt(s * (s + 1) - m * (m + 1));
  }
  const Eigen::MatrixXcd minus = plus.adjoint();
  return {(plus + minus) / 2.0, (plus - minus) / cd(0, 2), z};
}

// exp(-i beta S_y) through the spectral decomposition of S_y.
inline Eigen::MatrixXd small_d_ref(double s, double beta) {
  const RefSpin sp = ref_spin(s);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(sp.y);
  Eigen::VectorXcd phase(es.eigenvalues().size());
  for (int i = 0; i < phase.size(); ++i) phase(i) = std::exp(cd(0, -beta * es.eigenvalues()(i)));
  const Eigen::MatrixXcd u = es.eigenvectors() * phase.asDiagonal() * es.eigenvectors().adjoint();
  return u.real();
}

inline Eigen::MatrixXcd rotation_ref(double s, double a, double b, double c) {
  const RefSpin sp = ref_spin(s);
  const int n = static_cast<int>(sp.z.rows());
  Eigen::MatrixXcd za(n, n), zc(n, n);
  za.setZero();
  zc.setZero();
  for (int i = 0; i < n; ++i) {
    const double m = sp.z(i, i).real();
    za(i, i) = std::exp(cd(0, -m * a));
    zc(i, i) = std::exp(cd(0, -m * c));
  }
  return za * small_d_ref(s, b).cast<cd>() * zc;
}

inline Eigen::MatrixXcd random_hermitian(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Eigen::MatrixXcd a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = cd(g(rng), g(rng));
  return (a + a.adjoint()) / 2.0;
}

// Full-rank Wishart-like state, unit trace.
inline Eigen::MatrixXcd random_density(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Eigen::MatrixXcd a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = cd(g(rng), g(rng));
  Eigen::MatrixXcd rho = a * a.adjoint();
  return rho / rho.trace().real();
}

inline Eigen::VectorXcd random_ket(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Eigen::VectorXcd v(n);
  for (int i = 0; i < n; ++i) v(i) = cd(g(rng), g(rng));
  return v.normalized();
}

inline Eigen::MatrixXcd random_pure(int n, std::mt19937_64& rng) {
  const Eigen::VectorXcd v = random_ket(n, rng);
  return v * v.adjoint();
}

inline Eigen::Vector3d random_unit(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Eigen::Vector3d v(g(rng), g(rng), g(rng));
  return v.normalized();
}

inline std::vector<double> random_populations(int n, std::mt19937_64& rng) {
  std::exponential_distribution<double> e(1.0);
  std::vector<double> p(n);
  double total = 0.0;
  for (auto& x : p) total += (x = e(rng));
  for (auto& x : p) x /= total;
  return p;
}

// Diagonal populations about a random axis: U diag(p) U^dagger with U the
// rotation taking z to that axis.
inline Eigen::MatrixXcd random_oriented(double s, std::mt19937_64& rng, Eigen::Vector3d* axis = nullptr) {
  const int n = static_cast<int>(std::lround(2 * s)) + 1;
  const auto p = random_populations(n, rng);
  const Eigen::Vector3d nvec = random_unit(rng);
  const double theta = std::acos(std::clamp(nvec.z(), -1.0, 1.0));
  const double phi = std::atan2(nvec.y(), nvec.x());
  const Eigen::MatrixXcd u = rotation_ref(s, phi, theta, 0.0);
  Eigen::VectorXcd d(n);
  for (int i = 0; i < n; ++i) d(i) = p[i];
  if (axis) *axis = nvec;
  return u * d.asDiagonal() * u.adjoint();
}

inline double twopi() { return 2 * std::numbers::pi; }

}  // namespace testsupport
