#include "spinsq/tensor_ops.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <tuple>

#include "spinsq/angular.hpp"
#include "spinsq/errors.hpp"

namespace spinsq {

namespace {

using Complex = std::complex<double>;

OperatorMatrix build_tau(HalfInt s, int k, int q) {
  const int n = s.multiplicity();
  const double norm = std::sqrt(2.0 * k + 1.0);
  OperatorMatrix out = OperatorMatrix::Zero(n, n);
  for (int row = 0; row < n; ++row) {
    const HalfInt mp = HalfInt::from_twice(s.twice() - 2 * row);
    const HalfInt m = mp - HalfInt(q);
    if (!valid_projection(s, m)) continue;
    const int col = (s.twice() - m.twice()) / 2;
    out(row, col) = norm * clebsch_gordan(s, HalfInt(k), s, m, HalfInt(q), mp);
  }
  return out;
}

}  // namespace

const OperatorMatrix& tau(HalfInt s, int k, int q) {
  if (s.twice() < 0) throw DomainError("spin must be non-negative");
  if (k < 0 || k > s.twice() || q > k || q < -k) {
    throw DomainError("tau^" + std::to_string(k) + "_" + std::to_string(q) + " undefined for s = " + s.str());
  }

  using Key = std::tuple<int, int, int>;
  static std::shared_mutex mutex;
  static std::map<Key, std::unique_ptr<const OperatorMatrix>> cache;

  const Key key{s.twice(), k, q};
  {
    std::shared_lock lock(mutex);
    if (auto it = cache.find(key); it != cache.end()) return *it->second;
  }
  auto built = std::make_unique<const OperatorMatrix>(build_tau(s, k, q));
  std::unique_lock lock(mutex);
  auto [it, inserted] = cache.try_emplace(key, std::move(built));
  return *it->second;
}

OperatorMatrix SpinMatrices::spherical(int q) const {
  const double r = 1.0 / std::sqrt(2.0);
  const Complex i(0.0, 1.0);
  switch (q) {
    case 1:
      return -r * (x + i * y);
    case 0:
      return z;
    case -1:
      return r * (x - i * y);
    default:
      throw DomainError("spherical vector component must be -1, 0 or 1");
  }
}

OperatorMatrix SpinMatrices::along(const Eigen::Vector3d& n) const {
  return n.x() * x + n.y() * y + n.z() * z;
}

SpinMatrices spin_matrices(HalfInt s) {
  if (s.twice() < 0) throw DomainError("spin must be non-negative");
  const int n = s.multiplicity();
  const double ss = s.value() * (s.value() + 1.0);

  OperatorMatrix raise = OperatorMatrix::Zero(n, n);
  OperatorMatrix z = OperatorMatrix::Zero(n, n);
  for (int col = 0; col < n; ++col) {
    const double m = s.value() - col;
    z(col, col) = m;
    if (col > 0) raise(col - 1, col) = std::sqrt(ss - m * (m + 1.0));
  }
  const OperatorMatrix lower = raise.adjoint();
  const Complex i(0.0, 1.0);
  return {0.5 * (raise + lower), -0.5 * i * (raise - lower), z};
}

std::array<Complex, 3> spherical_components(const Eigen::Vector3d& v) {
  const double r = 1.0 / std::sqrt(2.0);
  return {Complex(-r * v.x(), -r * v.y()), Complex(v.z(), 0.0), Complex(r * v.x(), -r * v.y())};
}

Eigen::Vector3d cartesian_from_spherical(const std::array<Complex, 3>& v) {
  const double r = 1.0 / std::sqrt(2.0);
  // V_x = (V_{-1} - V_{+1})/sqrt2, V_y = i (V_{-1} + V_{+1})/sqrt2.
  const Complex x = r * (v[2] - v[0]);
  const Complex y = Complex(0.0, 1.0) * r * (v[2] + v[0]);
  return {x.real(), y.real(), v[1].real()};
}

}  // namespace spinsq
