#include "spinsq/squeezing.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "spinsq/errors.hpp"

namespace spinsq {

namespace {

std::string describe(const Eigen::VectorXd& eigenvalues) {
  std::ostringstream os;
  os << "state is not positive semi-definite; eigenvalues:";
  os.precision(6);
  for (double v : eigenvalues) os << ' ' << v;
  return os.str();
}

}  // namespace

UnphysicalState::UnphysicalState(Eigen::VectorXd eigenvalues)
    : DomainError(describe(eigenvalues)), eigenvalues_(std::move(eigenvalues)) {}

double SqueezingReport::variance_at(double phi) const {
  const double c = std::cos(phi);
  const double s = std::sin(phi);
  return var_x0 * c * c + var_y0 * s * s;
}

SqueezingReport analyze(const SpinDensity& rho) {
  const PositivityReport positivity = check_positivity(rho);
  if (!positivity.psd) throw UnphysicalState(positivity.eigenvalues);

  SqueezingReport report;
  report.spin = rho.spin();
  const HalfInt s = rho.spin();
  const Eigen::Vector3d p = polarization(rho);
  if (s.twice() < 1 || p.norm() < 1e-10 * s.value()) {
    report.reason = "no vector polarization";
    return report;
  }

  const FrameResult frame = special_lakin_frame(to_tensors(rho));
  const TensorParams& lf = frame.params;
  const double f1 = rank1_factor(s);

  // In the special Lakin frame <S_x0> = <S_y0> = 0, so the variances are
  // the second moments.
  double var_x = 1.0 / (f1 * f1);
  double var_y = var_x;
  if (lf.max_rank() >= 2) {
    const double f2 = rank2_factor(s);
    const double t20 = lf.at(2, 0).real();
    const double t22 = lf.at(2, 2).real();
    const double a = std::sqrt(2.0 / 3.0) * t20;
    var_x += (2.0 * t22 - a) / (2.0 * f2);
    var_y -= (2.0 * t22 + a) / (2.0 * f2);
  }

  report.mean_spin = p.normalized();
  report.mean_spin_length = std::abs(lf.at(1, 0).real()) / f1;
  report.sz_half = 0.5 * report.mean_spin_length;
  report.var_x0 = var_x;
  report.var_y0 = var_y;
  if (var_y < var_x) {
    report.phi_min = 0.5 * std::numbers::pi;
    report.min_variance = var_y;
  } else {
    report.phi_min = 0.0;
    report.min_variance = var_x;
  }
  report.q_margin = report.sz_half - report.min_variance;
  report.xi = std::sqrt(std::max(0.0, 2.0 * s.value() * report.min_variance) /
                        (report.mean_spin_length * report.mean_spin_length));
  report.squeezed = report.q_margin > kSqueezeMargin;
  report.frame = frame;
  return report;
}

double lf_criterion(HalfInt s, double t10, double t20, double t22, double phi) {
  if (s.twice() < 2) throw DomainError("squeezing criterion needs s >= 1; spin 1/2 is never squeezed");
  const double v = s.value();
  const double coupling = std::sqrt(3.0 * (2.0 * v + 3.0) * (2.0 * v - 1.0) / (40.0 * v * (v + 1.0)));
  const double lhs = 1.0 + coupling * (2.0 * t22 * std::cos(2.0 * phi) - std::sqrt(2.0 / 3.0) * t20);
  const double rhs = 0.5 * std::sqrt(3.0 / (v * (v + 1.0))) * std::abs(t10);
  return rhs - lhs;
}

double oriented_margin(HalfInt s, std::span<const double> populations) {
  const int n = s.multiplicity();
  if (static_cast<int>(populations.size()) != n) {
    throw DomainError("expected " + std::to_string(n) + " populations for s = " + s.str());
  }
  double total = 0.0, first = 0.0, second = 0.0;
  for (int i = 0; i < n; ++i) {
    const double p = populations[i];
    if (!(p >= -1e-12)) throw DomainError("populations must be non-negative");
    const double m = s.value() - i;
    total += p;
    first += m * p;
    second += m * m * p;
  }
  if (std::abs(total - 1.0) > 1e-10) throw DomainError("populations must sum to 1");
  const double v = s.value();
  return std::abs(first) - (v * (v + 1.0) - second);
}

}  // namespace spinsq
