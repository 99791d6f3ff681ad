#pragma once

// Angular-momentum coupling coefficients and rotation matrices.
//
// Conventions: Condon-Shortley phases throughout. C(j1 j2 j; m1 m2 m) is
// <j1 m1 j2 m2 | j m>. Rotations are active z-y-z, R(a,b,c) = Rz(a) Ry(b) Rz(c),
// and D^j_{m'm}(a,b,c) = <j m'| R |j m> = exp(-i m' a) d^j_{m'm}(b) exp(-i m c).
// Matrix rows/columns run m = j, j-1, ..., -j.

#include <Eigen/Dense>
#include <complex>
#include <optional>

#include "spinsq/exact.hpp"
#include "spinsq/half_int.hpp"

namespace spinsq {

/// z-y-z Euler angles in radians, normalised to [0,2pi) x [0,pi] x [0,2pi).
///
/// Normalisation maps (a, b, c) to an equivalent SO(3) rotation. For
/// half-integer representations this may flip the overall sign of D.
class EulerAngles {
 public:
  EulerAngles() = default;
  EulerAngles(double alpha, double beta, double gamma);

  double alpha() const { return alpha_; }
  double beta() const { return beta_; }
  double gamma() const { return gamma_; }

 private:
  double alpha_ = 0.0;
  double beta_ = 0.0;
  double gamma_ = 0.0;
};

/// 3x3 active rotation Rz(alpha) Ry(beta) Rz(gamma).
Eigen::Matrix3d rotation_matrix(const EulerAngles& angles);

/// Inverse of rotation_matrix for a proper orthogonal matrix. In the
/// gimbal-lock cases (beta = 0 or pi) gamma is set to 0.
EulerAngles euler_from_rotation(const Eigen::Matrix3d& rotation);

// --- Coupling coefficients -------------------------------------------------

/// Exact C(j1 j2 j; m1 m2 m). Zero when m1 + m2 != m, when the triangle rule
/// fails or when some |m| exceeds its j. Throws DomainError on a (j, m)
/// parity mismatch or a negative j.
exact::Surd clebsch_gordan_exact(HalfInt j1, HalfInt j2, HalfInt j, HalfInt m1, HalfInt m2, HalfInt m);

double clebsch_gordan(HalfInt j1, HalfInt j2, HalfInt j, HalfInt m1, HalfInt m2, HalfInt m);

/// Exact 6-j symbol {a b c; d e f}; zero unless all four triads close.
exact::Surd wigner_6j_exact(HalfInt a, HalfInt b, HalfInt c, HalfInt d, HalfInt e, HalfInt f);

double wigner_6j(HalfInt a, HalfInt b, HalfInt c, HalfInt d, HalfInt e, HalfInt f);

/// Racah W(abcd; ef) = (-1)^(a+b+c+d) {a b e; d c f}.
exact::Surd racah_w_exact(HalfInt a, HalfInt b, HalfInt c, HalfInt d, HalfInt e, HalfInt f);

double racah_w(HalfInt a, HalfInt b, HalfInt c, HalfInt d, HalfInt e, HalfInt f);

/// 9-j symbol
///   { j11 j12 j13 }
///   { j21 j22 j23 }
///   { j31 j32 j33 }
/// as a single sum over products of three 6-j symbols, accumulated exactly.
double wigner_9j(HalfInt j11, HalfInt j12, HalfInt j13,
                 HalfInt j21, HalfInt j22, HalfInt j23,
                 HalfInt j31, HalfInt j32, HalfInt j33);

/// Exact 9-j value when the exact sum collapses to a single surd.
std::optional<exact::Surd> wigner_9j_exact(HalfInt j11, HalfInt j12, HalfInt j13,
                                           HalfInt j21, HalfInt j22, HalfInt j23,
                                           HalfInt j31, HalfInt j32, HalfInt j33);

// --- Rotation matrices -----------------------------------------------------

/// Wigner small-d element d^j_{m'm}(beta) from the factorial sum.
double wigner_small_d(HalfInt j, HalfInt mp, HalfInt m, double beta);

/// D^j_{m'm}(alpha, beta, gamma). Throws DomainError on parity or bound
/// violations.
std::complex<double> wigner_d(HalfInt j, HalfInt mp, HalfInt m, const EulerAngles& angles);

/// Full (2j+1)x(2j+1) matrix D^j(alpha, beta, gamma), row index m'.
Eigen::MatrixXcd wigner_d_matrix(HalfInt j, const EulerAngles& angles);

}  // namespace spinsq
