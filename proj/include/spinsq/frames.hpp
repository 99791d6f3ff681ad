#pragma once

#include <Eigen/Dense>

#include "spinsq/angular.hpp"
#include "spinsq/density.hpp"

namespace spinsq {

/// A coordinate frame reached from the input frame by `rotation`, and the
/// state's tensors expressed in it.
struct FrameResult {
  EulerAngles rotation;
  TensorParams params;
};

/// Re-expresses the tensors in the frame obtained by rotating the current
/// frame through `angles`: t'^k_q = sum_q' D^k_{q'q}(angles) t^k_q'.
TensorParams rotate_tensors(const TensorParams& t, const EulerAngles& angles);

/// Cartesian axes of the rotated frame, as columns, in input coordinates.
Eigen::Matrix3d frame_axes(const EulerAngles& angles);

/// Lakin frame with z along the mean spin, then turned about that z so that
/// t^2_2 is real and non-negative (gamma in [0, pi)).
///
/// Throws FrameUndefined("LakinFrameUndefined") when |P| < 1e-10 s.
FrameResult special_lakin_frame(const TensorParams& t);
FrameResult special_lakin_frame(const SpinDensity& rho);

/// Principal axes of the Cartesian alignment tensor
/// <(S_a S_b + S_b S_a)/2> - delta_ab s(s+1)/3. Eigenvalues sorted
/// descending become the new (z, x, y) axes.
///
/// Throws FrameUndefined("NoAlignment") when every t^2_q vanishes.
FrameResult paaf(const SpinDensity& rho);

/// The alignment tensor itself, normalised by the trace.
Eigen::Matrix3d alignment_tensor(const SpinDensity& rho);

}  // namespace spinsq
