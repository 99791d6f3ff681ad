#pragma once

#include <Eigen/Dense>
#include <complex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "spinsq/half_int.hpp"
#include "spinsq/tensor_ops.hpp"

namespace spinsq {

/// Fano statistical tensors t^k_q = Tr(rho tau^k_q) / Tr(rho) of a spin-s
/// state, together with the trace they were normalised by.
///
/// Ranks run k = 0..2s and t^0_0 = 1. Hermitian states satisfy the pairing
/// t^k_q* = (-1)^q t^k_{-q}; set_paired() maintains it.
class TensorParams {
 public:
  explicit TensorParams(HalfInt spin, double trace = 1.0);

  HalfInt spin() const { return spin_; }
  double trace() const { return trace_; }
  int max_rank() const { return spin_.twice(); }

  std::complex<double> at(int k, int q) const { return entries_[index(k, q)]; }
  void set(int k, int q, std::complex<double> value) { entries_[index(k, q)] = value; }
  /// Sets t^k_q and its Hermitian partner t^k_{-q}.
  void set_paired(int k, int q, std::complex<double> value);

  /// Sum_q |t^k_q|^2, invariant under rotations.
  double rank_norm(int k) const;

  /// (k, q) with q >= 0 whose pairing is violated by more than tol.
  std::vector<std::pair<int, int>> pairing_violations(double tol = 1e-12) const;

 private:
  std::size_t index(int k, int q) const;

  HalfInt spin_;
  double trace_;
  std::vector<std::complex<double>> entries_;
};

/// Hermitian (2s+1)x(2s+1) density matrix with positive trace; need not be
/// normalised or positive semi-definite.
class SpinDensity {
 public:
  SpinDensity(HalfInt spin, Eigen::MatrixXcd matrix);

  HalfInt spin() const { return spin_; }
  const Eigen::MatrixXcd& matrix() const { return matrix_; }
  double trace() const { return matrix_.trace().real(); }
  Eigen::MatrixXcd normalized() const { return matrix_ / trace(); }

 private:
  HalfInt spin_;
  Eigen::MatrixXcd matrix_;
};

/// Converts <S_z> <-> t^1_0: <S_z> = t^1_0 / rank1_factor(s).
double rank1_factor(HalfInt s);
/// Scale of the rank-2 contribution to second moments; needs s >= 1.
double rank2_factor(HalfInt s);

/// rho = (Tr rho / (2s+1)) sum_kq (-1)^q t^k_{-q} tau^k_q.
SpinDensity from_tensors(const TensorParams& t);

TensorParams to_tensors(const SpinDensity& rho);

/// Mean spin vector Tr(rho S) / Tr(rho).
Eigen::Vector3d polarization(const SpinDensity& rho);

/// Variance of S . n for a unit direction n.
double variance(const SpinDensity& rho, const Eigen::Vector3d& direction);

/// Variances of S_x, S_y, S_z from the rank <= 2 tensors alone.
Eigen::Vector3d variances_from_tensors(const TensorParams& t);

struct BoundCheck {
  std::string name;
  double value;
  double lower;
  double upper;
  bool satisfied;
};

struct PositivityReport {
  bool psd;
  /// Eigenvalues of rho / Tr(rho), ascending.
  Eigen::VectorXd eigenvalues;
  /// The known necessary conditions for spin 1 (empty otherwise).
  std::vector<BoundCheck> spin1_bounds;
};

/// Minimum eigenvalue of the normalised state must be >= -psd_tolerance.
inline constexpr double kPsdTolerance = 1e-10;

PositivityReport check_positivity(const SpinDensity& rho);

/// Largest violation of the pure-state constraints on the tensors,
/// max_kq | sum [k1][k2] W(s k1 s k2; s k) (t^k1 x t^k2)^k_q - [s] t^k_q |.
/// Zero exactly for pure states.
double purity_residual(const TensorParams& t);

struct OrientationReport {
  bool oriented;
  /// Axis of orientation; z for a state proportional to the identity.
  std::optional<Eigen::Vector3d> axis;
  /// Populations of |s m> about the axis, m = s..-s.
  std::optional<std::vector<double>> populations;
};

/// A state is oriented when it is diagonal in the |s m> basis of some axis,
/// i.e. when [rho, S . n] = 0 has a non-trivial solution n.
OrientationReport classify_orientation(const SpinDensity& rho);

}  // namespace spinsq
