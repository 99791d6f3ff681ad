#pragma once

#include <Eigen/Dense>
#include <array>

#include "spinsq/half_int.hpp"

namespace spinsq {

/// Dense operator on the 2s+1 dimensional spin space, basis m = s, ..., -s.
using OperatorMatrix = Eigen::MatrixXcd;

/// Irreducible spherical tensor operator tau^k_q for spin s, normalised so
/// that Tr(tau^k_q^dagger tau^k'_q') = (2s+1) delta_kk' delta_qq' and
/// tau^0_0 is the identity:
///
///   <s m'| tau^k_q |s m> = sqrt(2k+1) C(s k s; m q m').
///
/// Matrices are built once per (s, k, q) and shared; the returned reference
/// stays valid for the lifetime of the program. Throws DomainError when
/// k > 2s, |q| > k or k is negative.
const OperatorMatrix& tau(HalfInt s, int k, int q);

struct SpinMatrices {
  OperatorMatrix x;
  OperatorMatrix y;
  OperatorMatrix z;

  /// Spherical component S^1_q, q in {-1, 0, 1}: S_{+-1} = -+(S_x +- i S_y)/sqrt2.
  OperatorMatrix spherical(int q) const;
  /// S . n for a Cartesian direction n.
  OperatorMatrix along(const Eigen::Vector3d& n) const;
};

/// Cartesian spin matrices from the ladder-operator elements.
SpinMatrices spin_matrices(HalfInt s);

/// Spherical components (V_{+1}, V_0, V_{-1}) of a Cartesian vector.
std::array<std::complex<double>, 3> spherical_components(const Eigen::Vector3d& v);

/// Cartesian vector from spherical components (V_{+1}, V_0, V_{-1}).
Eigen::Vector3d cartesian_from_spherical(const std::array<std::complex<double>, 3>& v);

}  // namespace spinsq
