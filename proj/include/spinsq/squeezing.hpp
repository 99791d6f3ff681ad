#pragma once

#include <Eigen/Dense>
#include <optional>
#include <span>
#include <string>

#include "spinsq/density.hpp"
#include "spinsq/errors.hpp"
#include "spinsq/frames.hpp"

namespace spinsq {

/// Squeezing verdict for one state.
///
/// The transverse variance at azimuth phi about the mean spin, measured from
/// the special Lakin x0 axis, is var_x0 cos^2(phi) + var_y0 sin^2(phi).
struct SqueezingReport {
  HalfInt spin;
  /// Unit mean-spin direction in the input frame (zero when unpolarized).
  Eigen::Vector3d mean_spin = Eigen::Vector3d::Zero();
  /// |<S . P^>|.
  double mean_spin_length = 0.0;
  /// Half of |<S . P^>|: the squeezing bound.
  double sz_half = 0.0;
  double var_x0 = 0.0;
  double var_y0 = 0.0;
  double phi_min = 0.0;
  double min_variance = 0.0;
  /// sz_half - min_variance.
  double q_margin = 0.0;
  /// Wineland parameter sqrt(2s min_variance / <S.P^>^2), informational.
  double xi = 0.0;
  bool squeezed = false;
  /// Non-empty when no verdict could be formed from the polarization.
  std::string reason;
  std::optional<FrameResult> frame;

  double variance_at(double phi) const;
};

/// Strict-inequality threshold on q_margin.
inline constexpr double kSqueezeMargin = 1e-12;

/// Generalised squeezing test. Throws UnphysicalState for non-PSD input.
SqueezingReport analyze(const SpinDensity& rho);

/// Non-PSD input to analyze(); carries the offending spectrum.
class UnphysicalState : public DomainError {
 public:
  explicit UnphysicalState(Eigen::VectorXd eigenvalues);
  const Eigen::VectorXd& eigenvalues() const { return eigenvalues_; }

 private:
  Eigen::VectorXd eigenvalues_;
};

/// Right minus left side of the special-Lakin-frame squeezing inequality
///   1 + sqrt(3(2s+3)(2s-1)/(40 s(s+1))) (2 t22 cos 2phi - sqrt(2/3) t20)
///     < (1/2) sqrt(3/(s(s+1))) |t10|.
/// Positive means squeezed in S_perp(phi). Throws DomainError for s < 1.
double lf_criterion(HalfInt s, double t10, double t20, double t22, double phi);

/// |sum m p_m| - (s(s+1) - sum m^2 p_m) for an oriented state with
/// populations p_m, m = s..-s. Never positive.
double oriented_margin(HalfInt s, std::span<const double> populations);

}  // namespace spinsq
