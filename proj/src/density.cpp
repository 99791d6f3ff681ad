#include "spinsq/density.hpp"

#include <algorithm>
#include <cmath>

#include "spinsq/angular.hpp"
#include "spinsq/errors.hpp"

namespace spinsq {

namespace {

using Complex = std::complex<double>;

double bracket(int twice) { return std::sqrt(twice + 1.0); }  // [j] = sqrt(2j+1)

int parity_sign(int q) { return (q % 2 == 0) ? 1 : -1; }

double spin_scale(HalfInt s) { return std::max(1.0, s.value()); }

}  // namespace

// --- TensorParams ------------------------------------------------------------

TensorParams::TensorParams(HalfInt spin, double trace) : spin_(spin), trace_(trace) {
  if (spin.twice() < 0) throw DomainError("spin must be non-negative");
  if (!(trace > 0.0) || !std::isfinite(trace)) throw DomainError("trace must be positive");
  const int n = spin.multiplicity();
  entries_.assign(static_cast<std::size_t>(n) * n, Complex(0.0));
  entries_[0] = 1.0;
}

std::size_t TensorParams::index(int k, int q) const {
  if (k < 0 || k > max_rank() || q < -k || q > k) {
    throw DomainError("t^" + std::to_string(k) + "_" + std::to_string(q) + " out of range for s = " + spin_.str());
  }
  return static_cast<std::size_t>(k * k + k + q);
}

void TensorParams::set_paired(int k, int q, Complex value) {
  if (q == 0 && std::abs(value.imag()) > 1e-12) {
    throw DomainError("t^" + std::to_string(k) + "_0 of a Hermitian state must be real");
  }
  set(k, q, q == 0 ? Complex(value.real(), 0.0) : value);
  if (q != 0) set(k, -q, double(parity_sign(q)) * std::conj(value));
}

double TensorParams::rank_norm(int k) const {
  double sum = 0.0;
  for (int q = -k; q <= k; ++q) sum += std::norm(at(k, q));
  return sum;
}

std::vector<std::pair<int, int>> TensorParams::pairing_violations(double tol) const {
  std::vector<std::pair<int, int>> bad;
  for (int k = 0; k <= max_rank(); ++k) {
    for (int q = 0; q <= k; ++q) {
      if (std::abs(std::conj(at(k, q)) - double(parity_sign(q)) * at(k, -q)) > tol) bad.emplace_back(k, q);
    }
  }
  return bad;
}

// --- SpinDensity -------------------------------------------------------------

SpinDensity::SpinDensity(HalfInt spin, Eigen::MatrixXcd matrix) : spin_(spin), matrix_(std::move(matrix)) {
  const int n = spin.multiplicity();
  if (spin.twice() < 0 || matrix_.rows() != n || matrix_.cols() != n) {
    throw DomainError("density matrix for s = " + spin.str() + " must be " + std::to_string(n) + "x" +
                      std::to_string(n));
  }
  const double scale = std::max(1.0, matrix_.norm());
  if ((matrix_ - matrix_.adjoint()).norm() > 1e-12 * scale) throw DomainError("density matrix is not Hermitian");
  matrix_ = 0.5 * (matrix_ + matrix_.adjoint()).eval();
  if (!(trace() > 0.0)) throw DomainError("density matrix must have positive trace");
}

// --- Conversions ---------------------------------------------------------------

double rank1_factor(HalfInt s) {
  if (s.twice() < 1) throw DomainError("no vector polarization for s = 0");
  const double v = s.value();
  return std::sqrt(3.0 / (v * (v + 1.0)));
}

double rank2_factor(HalfInt s) {
  if (s.twice() < 2) throw DomainError("rank-2 tensors need s >= 1");
  const double v = s.value();
  return std::sqrt(30.0 / (v * (v + 1.0) * (2.0 * v - 1.0) * (2.0 * v + 3.0)));
}

SpinDensity from_tensors(const TensorParams& t) {
  if (auto bad = t.pairing_violations(); !bad.empty()) {
    std::string msg = "Hermitian pairing violated at";
    for (auto [k, q] : bad) msg += " (" + std::to_string(k) + "," + std::to_string(q) + ")";
    throw DomainError(msg);
  }
  const HalfInt s = t.spin();
  const int n = s.multiplicity();
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(n, n);
  for (int k = 0; k <= t.max_rank(); ++k) {
    for (int q = -k; q <= k; ++q) {
      const Complex c = double(parity_sign(q)) * t.at(k, -q);
      if (c != Complex(0.0)) rho += c * tau(s, k, q);
    }
  }
  rho *= t.trace() / n;
  return SpinDensity(s, std::move(rho));
}

TensorParams to_tensors(const SpinDensity& rho) {
  const HalfInt s = rho.spin();
  const double tr = rho.trace();
  TensorParams t(s, tr);
  for (int k = 1; k <= t.max_rank(); ++k) {
    for (int q = -k; q <= k; ++q) {
      // Tr(rho tau) as an elementwise contraction with the transpose.
      t.set(k, q, (rho.matrix().transpose().cwiseProduct(tau(s, k, q))).sum() / tr);
    }
  }
  return t;
}

Eigen::Vector3d polarization(const SpinDensity& rho) {
  const SpinMatrices spin = spin_matrices(rho.spin());
  const double tr = rho.trace();
  auto expect = [&](const OperatorMatrix& op) { return (rho.matrix() * op).trace().real() / tr; };
  return {expect(spin.x), expect(spin.y), expect(spin.z)};
}

double variance(const SpinDensity& rho, const Eigen::Vector3d& direction) {
  if (std::abs(direction.norm() - 1.0) > 1e-9) throw DomainError("variance direction must be a unit vector");
  const OperatorMatrix op = spin_matrices(rho.spin()).along(direction);
  const double tr = rho.trace();
  const double first = (rho.matrix() * op).trace().real() / tr;
  const double second = (rho.matrix() * op * op).trace().real() / tr;
  return second - first * first;
}

Eigen::Vector3d variances_from_tensors(const TensorParams& t) {
  const HalfInt s = t.spin();
  const double f1 = rank1_factor(s);
  const double base = 1.0 / (f1 * f1);
  double xx = base, yy = base, zz = base;
  if (t.max_rank() >= 2) {
    const double f2 = rank2_factor(s);
    const double t20 = t.at(2, 0).real();
    const double t22_sum = (t.at(2, 2) + t.at(2, -2)).real();
    xx += -t20 / (std::sqrt(6.0) * f2) + t22_sum / (2.0 * f2);
    yy += -t20 / (std::sqrt(6.0) * f2) - t22_sum / (2.0 * f2);
    zz += std::sqrt(2.0 / 3.0) * t20 / f2;
  }
  const Complex diff = t.at(1, -1) - t.at(1, 1);
  const Complex sum = t.at(1, -1) + t.at(1, 1);
  const double t10 = t.at(1, 0).real();
  return {xx - (diff * diff).real() / (2.0 * f1 * f1), yy + (sum * sum).real() / (2.0 * f1 * f1),
          zz - t10 * t10 / (f1 * f1)};
}

// --- Positivity ------------------------------------------------------------------

PositivityReport check_positivity(const SpinDensity& rho) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(rho.normalized(), Eigen::EigenvaluesOnly);
  PositivityReport report{solver.eigenvalues().minCoeff() >= -kPsdTolerance, solver.eigenvalues(), {}};

  if (rho.spin() == HalfInt(1)) {
    const TensorParams t = to_tensors(rho);
    const double t10 = t.at(1, 0).real();
    const double t20 = t.at(2, 0).real();
    constexpr double kSlack = 1e-12;
    auto check = [&](std::string name, double value, double lower, double upper) {
      report.spin1_bounds.push_back(
          {std::move(name), value, lower, upper, value >= lower - kSlack && value <= upper + kSlack});
    };
    check("(1 + sqrt(3/2) t10 + t20/sqrt2)/3", (1.0 + std::sqrt(1.5) * t10 + t20 / std::sqrt(2.0)) / 3.0, 0.0, 1.0);
    check("(1 - sqrt(3/2) t10 + t20/sqrt2)/3", (1.0 - std::sqrt(1.5) * t10 + t20 / std::sqrt(2.0)) / 3.0, 0.0, 1.0);
    check("(1 - sqrt2 t20)/3", (1.0 - std::sqrt(2.0) * t20) / 3.0, 0.0, 1.0);
    check("t10^2 + 2|t22|^2 + 2|t21|^2 + t20^2",
          t10 * t10 + 2.0 * std::norm(t.at(2, 2)) + 2.0 * std::norm(t.at(2, 1)) + t20 * t20, 0.0, 2.0);
    check("det rho", rho.normalized().determinant().real(), 0.0, 1.0 / 27.0);
  }
  return report;
}

// --- Purity ------------------------------------------------------------------------

double purity_residual(const TensorParams& t) {
  const HalfInt s = t.spin();
  const int top = t.max_rank();
  double worst = 0.0;
  for (int k = 0; k <= top; ++k) {
    for (int q = -k; q <= k; ++q) {
      Complex lhs = 0.0;
      for (int k1 = 0; k1 <= top; ++k1) {
        for (int k2 = std::abs(k - k1); k2 <= std::min(top, k + k1); ++k2) {
          const double w = racah_w(s, HalfInt(k1), s, HalfInt(k2), s, HalfInt(k));
          if (w == 0.0) continue;
          Complex coupled = 0.0;
          for (int q1 = -k1; q1 <= k1; ++q1) {
            const int q2 = q - q1;
            if (q2 < -k2 || q2 > k2) continue;
            coupled += clebsch_gordan(HalfInt(k1), HalfInt(k2), HalfInt(k), HalfInt(q1), HalfInt(q2), HalfInt(q)) *
                       t.at(k1, q1) * t.at(k2, q2);
          }
          lhs += bracket(2 * k1) * bracket(2 * k2) * w * coupled;
        }
      }
      worst = std::max(worst, std::abs(lhs - bracket(s.twice()) * t.at(k, q)));
    }
  }
  return worst;
}

// --- Orientation -------------------------------------------------------------------

OrientationReport classify_orientation(const SpinDensity& rho) {
  const HalfInt s = rho.spin();
  const int n = s.multiplicity();
  const Eigen::MatrixXcd state = rho.normalized();
  const SpinMatrices spin = spin_matrices(s);

  // Columns: vectorised [rho, S_a] split into real and imaginary parts.
  Eigen::MatrixXd system(2 * n * n, 3);
  const OperatorMatrix* axes[3] = {&spin.x, &spin.y, &spin.z};
  for (int a = 0; a < 3; ++a) {
    const Eigen::MatrixXcd comm = state * *axes[a] - *axes[a] * state;
    system.col(a).head(n * n) = comm.real().reshaped();
    system.col(a).tail(n * n) = comm.imag().reshaped();
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(system, Eigen::ComputeFullV);
  const Eigen::Vector3d sigma = svd.singularValues();
  constexpr double kNullTol = 1e-9;

  OrientationReport report{false, std::nullopt, std::nullopt};
  if (sigma(2) > kNullTol * spin_scale(s)) return report;

  Eigen::Vector3d axis = Eigen::Vector3d::UnitZ();
  if (sigma(0) > kNullTol * spin_scale(s)) {
    axis = svd.matrixV().col(2).normalized();
    const Eigen::Vector3d p = polarization(rho);
    double orient = p.dot(axis);
    if (std::abs(orient) < 1e-12) orient = axis.z() != 0.0 ? axis.z() : (axis.y() != 0.0 ? axis.y() : axis.x());
    if (orient < 0.0) axis = -axis;
  }

  const double theta = std::acos(std::clamp(axis.z(), -1.0, 1.0));
  const double phi = std::atan2(axis.y(), axis.x());
  const Eigen::MatrixXcd d = wigner_d_matrix(s, EulerAngles(phi, theta, 0.0));
  const Eigen::MatrixXcd rotated = d.adjoint() * state * d;
  const Eigen::MatrixXcd off = rotated - Eigen::MatrixXcd(rotated.diagonal().asDiagonal());
  if (off.cwiseAbs().maxCoeff() > 1e-8) return report;

  report.oriented = true;
  report.axis = axis;
  std::vector<double> populations(n);
  for (int i = 0; i < n; ++i) populations[i] = rotated(i, i).real();
  report.populations = std::move(populations);
  return report;
}

}  // namespace spinsq
