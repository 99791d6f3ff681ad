#include "spinsq/frames.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "spinsq/errors.hpp"
#include "spinsq/tensor_ops.hpp"

namespace spinsq {

namespace {

using Complex = std::complex<double>;

constexpr double kZeroPolarization = 1e-10;
constexpr double kZeroAlignment = 1e-12;

}  // namespace

TensorParams rotate_tensors(const TensorParams& t, const EulerAngles& angles) {
  TensorParams out(t.spin(), t.trace());
  for (int k = 1; k <= t.max_rank(); ++k) {
    const Eigen::MatrixXcd d = wigner_d_matrix(HalfInt(k), angles);
    for (int q = -k; q <= k; ++q) {
      Complex value = 0.0;
      for (int qp = -k; qp <= k; ++qp) value += d(k - qp, k - q) * t.at(k, qp);
      out.set(k, q, value);
    }
  }
  return out;
}

Eigen::Matrix3d frame_axes(const EulerAngles& angles) { return rotation_matrix(angles); }

FrameResult special_lakin_frame(const TensorParams& t) {
  const HalfInt s = t.spin();
  if (s.twice() < 1) throw FrameUndefined("LakinFrameUndefined", "spin 0 has no polarization");
  const double f1 = rank1_factor(s);
  const Eigen::Vector3d p =
      cartesian_from_spherical({t.at(1, 1) / f1, t.at(1, 0) / f1, t.at(1, -1) / f1});
  if (p.norm() < kZeroPolarization * s.value()) {
    throw FrameUndefined("LakinFrameUndefined", "state has no vector polarization");
  }
  const double theta = std::acos(std::clamp(p.z() / p.norm(), -1.0, 1.0));
  const double phi = std::atan2(p.y(), p.x());

  double gamma = 0.0;
  if (t.max_rank() >= 2) {
    const Complex t22 = rotate_tensors(t, EulerAngles(phi, theta, 0.0)).at(2, 2);
    if (std::abs(t22) > 1e-15) {
      // Turning about z by gamma multiplies t^2_2 by exp(-2i gamma).
      gamma = 0.5 * std::arg(t22);
      if (gamma < 0.0) gamma += std::numbers::pi;
      if (gamma >= std::numbers::pi) gamma -= std::numbers::pi;
    }
  }
  const EulerAngles rotation(phi, theta, gamma);
  return {rotation, rotate_tensors(t, rotation)};
}

FrameResult special_lakin_frame(const SpinDensity& rho) { return special_lakin_frame(to_tensors(rho)); }

Eigen::Matrix3d alignment_tensor(const SpinDensity& rho) {
  const SpinMatrices spin = spin_matrices(rho.spin());
  const std::array<const OperatorMatrix*, 3> axes{&spin.x, &spin.y, &spin.z};
  const double ss = rho.spin().value() * (rho.spin().value() + 1.0);
  const double tr = rho.trace();
  Eigen::Matrix3d out;
  for (int a = 0; a < 3; ++a) {
    for (int b = a; b < 3; ++b) {
      const OperatorMatrix sym = 0.5 * (*axes[a] * *axes[b] + *axes[b] * *axes[a]);
      out(a, b) = (rho.matrix() * sym).trace().real() / tr - (a == b ? ss / 3.0 : 0.0);
      out(b, a) = out(a, b);
    }
  }
  return out;
}

FrameResult paaf(const SpinDensity& rho) {
  const TensorParams t = to_tensors(rho);
  if (t.max_rank() < 2 || std::sqrt(t.rank_norm(2)) < kZeroAlignment) {
    throw FrameUndefined("NoAlignment", "all t^2_q vanish");
  }
  const Eigen::Matrix3d tensor = alignment_tensor(rho);

  Eigen::Vector3d z_axis, x_axis;
  const Eigen::Matrix3d off = tensor - Eigen::Matrix3d(tensor.diagonal().asDiagonal());
  if (off.cwiseAbs().maxCoeff() < kZeroAlignment) {
    // Already principal: order the coordinate axes, ties keeping z, x, y.
    std::array<int, 3> order{2, 0, 1};
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return tensor(a, a) > tensor(b, b) + kZeroAlignment; });
    z_axis = Eigen::Vector3d::Unit(order[0]);
    x_axis = Eigen::Vector3d::Unit(order[1]);
  } else {
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> solver(tensor);
    z_axis = solver.eigenvectors().col(2);
    x_axis = solver.eigenvectors().col(1);
  }
  Eigen::Matrix3d axes;
  axes.col(0) = x_axis;
  axes.col(1) = z_axis.cross(x_axis);
  axes.col(2) = z_axis;
  const EulerAngles rotation = euler_from_rotation(axes);
  return {rotation, rotate_tensors(t, rotation)};
}

}  // namespace spinsq
