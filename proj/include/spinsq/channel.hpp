#pragma once

// Channel spin 1 of two polarized spin-1/2 systems in a direct-product state
// rho_c = rho(1) x rho(2), rho(i) = (1 + sigma . P(i)) / 2.

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "spinsq/angular.hpp"
#include "spinsq/density.hpp"

namespace spinsq {

/// Bloch vector of a spin-1/2 state, |p| <= 1.
class QubitPolarization {
 public:
  QubitPolarization() = default;
  explicit QubitPolarization(const Eigen::Vector3d& p);
  QubitPolarization(double x, double y, double z) : QubitPolarization(Eigen::Vector3d(x, y, z)) {}

  const Eigen::Vector3d& vector() const { return p_; }
  double magnitude() const { return p_.norm(); }

 private:
  Eigen::Vector3d p_ = Eigen::Vector3d::Zero();
};

struct ChannelState {
  /// (3 + P(1).P(2)) / 12; the projected density matrix is weight * (1 + ...).
  double weight;
  /// Spin-1 tensors in the input frame.
  TensorParams params;
};

/// Closed-form spin-1 tensors
///   t^1_q = sqrt6 / (3 + P1.P2) (P_q(1) + P_q(2)),
///   t^2_q = 2 sqrt3 / (3 + P1.P2) (P(1) x P(2))^2_q.
ChannelState couple_spin1(const QubitPolarization& p1, const QubitPolarization& p2);

/// The same tensors from the general recoupling sum over 9-j symbols.
TensorParams couple_spin1_ninej(const QubitPolarization& p1, const QubitPolarization& p2);

/// Pi_1 rho_c Pi_1 in the |1 m> basis, unnormalised: trace (3 + P1.P2)/4.
SpinDensity project_oracle(const QubitPolarization& p1, const QubitPolarization& p2);

/// Special Lakin frame of the pair: z0 along P(1)+P(2), x0 in the plane of
/// the two vectors with P(1) at azimuth 0, y0 = z0 x x0.
struct ChannelFrame {
  /// Columns x0, y0, z0 in input coordinates.
  Eigen::Matrix3d axes;
  EulerAngles rotation;
  /// P(1), P(2) in frame coordinates.
  Eigen::Vector3d p1;
  Eigen::Vector3d p2;
};

/// Throws FrameUndefined("LakinFrameUndefined") when |P(1)+P(2)| <= 1e-10.
ChannelFrame channel_geometry(const QubitPolarization& p1, const QubitPolarization& p2);

struct ChannelSqueezing {
  /// Variance of S_x0 cos(phi) + S_y0 sin(phi).
  double variance_perp;
  /// <S_z0> = 2 |P(1)+P(2)| / (3 + P1.P2).
  double sz_expect;
  /// (1/2)|P(1)+P(2)| + |P(1) x P(2)|^2 cos^2(phi) / |P(1)+P(2)|^2 - 1,
  /// which is (3 + P1.P2)/2 times (sz_expect/2 - variance_perp).
  double q_value;
  bool squeezed;
};

ChannelSqueezing channel_squeezing(const QubitPolarization& p1, const QubitPolarization& p2, double phi);

/// Spin-spin correlations C_ab = <S_a(1) S_b(2)> - <S_a(1)><S_b(2)> with
/// a, b measured along x = x0 cos(phi) + y0 sin(phi),
/// y = -x0 sin(phi) + y0 cos(phi), z = z0.
struct Correlations {
  double xx = 0.0;
  double yy = 0.0;
  double zz = 0.0;
  double xz = 0.0;
  double zy = 0.0;
  double xy = 0.0;
};

/// The closed forms, evaluated exactly as written.
Correlations correlations(const QubitPolarization& p1, const QubitPolarization& p2, double phi);

/// Direct expectation values in the normalised projected 4x4 state.
Correlations correlations_oracle(const QubitPolarization& p1, const QubitPolarization& p2, double phi);

struct CorrelationMismatch {
  std::string component;
  std::string formula;
  double closed_form;
  double oracle;
  double p1_mag;
  double p2_mag;
  double theta;
  double phi;
};

/// Components where the closed forms and the oracle differ by more than tol.
std::vector<CorrelationMismatch> compare_correlations(const QubitPolarization& p1, const QubitPolarization& p2,
                                                      double phi, double tol = 1e-10);

/// Angle between the two polarization vectors (0 when either vanishes).
double polarization_angle(const QubitPolarization& p1, const QubitPolarization& p2);

struct ThresholdConfig {
  int points = 400;  // per axis, >= 200
  int threads = 1;
};

struct ThresholdResult {
  /// Least |P| on the grid admitting squeezing when |P(1)| = |P(2)|.
  double equal_magnitude;
  /// Least |P(1)| on the grid admitting squeezing when |P(2)| = 1.
  double pure_partner;
  /// Grid step in |P|; each threshold is an upper bound within one step.
  double resolution;
};

/// Grid search over (|P|, theta) at phi = 0; theta spans [0, pi].
ThresholdResult threshold_scan(const ThresholdConfig& config = {});

}  // namespace spinsq
