#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "spinsq/channel.hpp"
#include "spinsq/errors.hpp"
#include "spinsq/frames.hpp"
#include "spinsq/squeezing.hpp"
#include "support.hpp"

using namespace spinsq;

namespace {

constexpr double kPi = std::numbers::pi;

QubitPolarization random_qubit(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0, 1);
  return QubitPolarization(testsupport::random_unit(rng) * std::cbrt(u(rng)));
}

QubitPolarization at_angle(double mag, double theta) {
  return QubitPolarization(mag * std::sin(theta), 0.0, mag * std::cos(theta));
}

double max_diff(const TensorParams& a, const TensorParams& b) {
  double worst = 0.0;
  for (int k = 0; k <= a.max_rank(); ++k)
    for (int q = -k; q <= k; ++q) worst = std::max(worst, std::abs(a.at(k, q) - b.at(k, q)));
  return worst;
}

}  // namespace

TEST(Qubit, RejectsOverPolarized) {
  EXPECT_THROW(QubitPolarization(0.8, 0.8, 0.0), DomainError);
  EXPECT_NO_THROW(QubitPolarization(0.0, 0.0, 1.0 + 1e-13));
}

TEST(Couple, Unpolarized) {
  const ChannelState c = couple_spin1({}, {});
  EXPECT_DOUBLE_EQ(c.weight, 0.25);
  for (int k = 1; k <= 2; ++k)
    for (int q = -k; q <= k; ++q) EXPECT_EQ(std::abs(c.params.at(k, q)), 0.0);
  const SpinDensity rho = project_oracle({}, {});
  EXPECT_NEAR(rho.trace(), 0.75, 1e-15);
  EXPECT_LT((rho.matrix() - 0.25 * Eigen::MatrixXcd::Identity(3, 3)).norm(), 1e-15);
}

TEST(Couple, ParallelPure) {
  const QubitPolarization z(0, 0, 1);
  const ChannelState c = couple_spin1(z, z);
  EXPECT_NEAR(c.weight, 1.0 / 3, 1e-15);
  EXPECT_NEAR(c.params.at(1, 0).real(), std::sqrt(6.0) / 2, 1e-15);
  EXPECT_NEAR(c.params.at(2, 0).real(), 1 / std::sqrt(2.0), 1e-15);

  const SpinDensity rho = project_oracle(z, z);
  EXPECT_NEAR(rho.trace(), 1.0, 1e-15);
  EXPECT_NEAR(std::abs(rho.matrix()(0, 0) - 1.0), 0.0, 1e-15);
  EXPECT_NEAR(rho.trace(), 3 * c.weight, 1e-15);
}

TEST(Couple, AntiparallelPure) {
  const QubitPolarization up(0, 0, 1), down(0, 0, -1);
  const ChannelState c = couple_spin1(up, down);
  EXPECT_NEAR(c.weight, 1.0 / 6, 1e-15);
  EXPECT_LT(c.params.rank_norm(1), 1e-30);
  // |up down> projects onto |1 0> / sqrt2: t^2_0 = sqrt5 C(1 2 1; 0 0 0) = -sqrt2
  EXPECT_NEAR(c.params.at(2, 0).real(), -std::sqrt(2.0), 1e-15);
  EXPECT_THROW(channel_geometry(up, down), FrameUndefined);
  EXPECT_EQ(analyze(project_oracle(up, down)).reason, "no vector polarization");
}

TEST(Couple, ThreeRoutesAgree) {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 1000; ++i) {
    const QubitPolarization a = random_qubit(rng), b = random_qubit(rng);
    const ChannelState c = couple_spin1(a, b);
    const SpinDensity rho = project_oracle(a, b);
    EXPECT_NEAR(rho.trace(), 3 * c.weight, 1e-14);
    EXPECT_LT(max_diff(c.params, couple_spin1_ninej(a, b)), 1e-12);
    EXPECT_LT(max_diff(c.params, to_tensors(rho)), 1e-12);
    EXPECT_GE(c.weight, 1.0 / 6 - 1e-15);
    EXPECT_LE(c.weight, 1.0 / 3 + 1e-15);
  }
}

TEST(Geometry, PrintedComponents) {
  const ChannelFrame f = channel_geometry(at_angle(1, 0), at_angle(1, kPi / 2));
  const double r = 1 / std::sqrt(2.0);
  EXPECT_NEAR(f.p1.x(), r, 1e-15);
  EXPECT_NEAR(f.p2.x(), -r, 1e-15);
  EXPECT_NEAR(f.p1.z(), r, 1e-15);
  EXPECT_NEAR(f.p2.z(), r, 1e-15);
  EXPECT_EQ(f.p1.y(), 0.0);
  EXPECT_EQ(f.p2.y(), 0.0);

  const ChannelFrame par = channel_geometry(at_angle(0.4, 0.3), at_angle(0.7, 0.3));
  EXPECT_NEAR(par.p1.x(), 0.0, 1e-15);
  EXPECT_NEAR(par.p1.z(), 0.4, 1e-15);
  EXPECT_NEAR(par.p2.z(), 0.7, 1e-15);
}

TEST(Geometry, FrameConsistency) {
  std::mt19937_64 rng(2);
  for (int i = 0; i < 200; ++i) {
    const QubitPolarization a = random_qubit(rng), b = random_qubit(rng);
    const ChannelFrame f = channel_geometry(a, b);
    EXPECT_LT((f.axes * f.p1 - a.vector()).norm(), 1e-12);
    EXPECT_LT((f.axes * f.p2 - b.vector()).norm(), 1e-12);
    EXPECT_LT((f.axes.col(1) - f.axes.col(2).cross(f.axes.col(0))).norm(), 1e-15);
    EXPECT_TRUE(rotation_matrix(f.rotation).isApprox(f.axes, 1e-12));
    EXPECT_GE(f.p1.x(), -1e-15);
    const double pxs = a.magnitude() * b.magnitude() * std::sin(polarization_angle(a, b)) /
                       (a.vector() + b.vector()).norm();
    EXPECT_NEAR(f.p1.x(), pxs, 1e-12);
    EXPECT_NEAR(f.p2.x(), -pxs, 1e-12);
  }
}

TEST(Geometry, ChannelTensorsInFrame) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 200; ++i) {
    const QubitPolarization a = random_qubit(rng), b = random_qubit(rng);
    const ChannelFrame f = channel_geometry(a, b);
    const TensorParams t = rotate_tensors(couple_spin1(a, b).params, f.rotation);
    EXPECT_LT(std::abs(t.at(1, 1)), 1e-12);
    EXPECT_LT(std::abs(t.at(2, 2).imag()), 1e-12);
    EXPECT_LE(t.at(2, 2).real(), 1e-12);
  }
}

TEST(ChannelSqueezing, PureOrthogonal) {
  const ChannelSqueezing c = channel_squeezing(at_angle(1, 0), at_angle(1, kPi / 2), 0.0);
  EXPECT_NEAR(c.q_value, std::sqrt(2.0) / 2 - 0.5, 1e-15);
  EXPECT_TRUE(c.squeezed);
}

TEST(ChannelSqueezing, ParallelNeverSqueezed) {
  for (double m1 : {0.1, 0.5, 1.0})
    for (double m2 : {0.2, 0.9, 1.0})
      for (double phi : {0.0, 0.7, kPi / 2}) {
        const ChannelSqueezing c = channel_squeezing(at_angle(m1, 0.4), at_angle(m2, 0.4), phi);
        EXPECT_FALSE(c.squeezed);
      }
}

TEST(ChannelSqueezing, MatchesGenericAnalysis) {
  std::mt19937_64 rng(4);
  for (int i = 0; i < 1000; ++i) {
    const QubitPolarization a = random_qubit(rng), b = random_qubit(rng);
    const SqueezingReport r = analyze(project_oracle(a, b));
    const ChannelSqueezing c0 = channel_squeezing(a, b, 0.0);
    const ChannelSqueezing c90 = channel_squeezing(a, b, kPi / 2);
    EXPECT_NEAR(c0.sz_expect / 2, r.sz_half, 1e-10);
    // The channel x0 is the generic special-Lakin y0 (t^2_2 <= 0 there).
    EXPECT_NEAR(c0.variance_perp, r.var_y0, 1e-10);
    EXPECT_NEAR(c90.variance_perp, r.var_x0, 1e-10);
    EXPECT_EQ(c0.squeezed || c90.squeezed, r.squeezed);

    const ChannelFrame f = channel_geometry(a, b);
    const SpinDensity rho = project_oracle(a, b);
    for (double phi : {0.0, 0.3, 1.2}) {
      const ChannelSqueezing c = channel_squeezing(a, b, phi);
      const Eigen::Vector3d n = std::cos(phi) * f.axes.col(0) + std::sin(phi) * f.axes.col(1);
      EXPECT_NEAR(c.variance_perp, variance(rho, n), 1e-10);
      const double margin = c.sz_expect / 2 - c.variance_perp;
      EXPECT_NEAR(c.q_value, (3 + a.vector().dot(b.vector())) / 2 * margin, 1e-10);
    }
  }
}

TEST(ChannelSqueezing, PureLimitReduction) {
  for (int i = 1; i < 1000; ++i) {
    const double theta = kPi * i / 1000.0;
    const ChannelSqueezing c = channel_squeezing(at_angle(1, 0), at_angle(1, theta), 0.0);
    const double x = theta / 2;
    const double reduced = std::abs(std::cos(x)) - std::cos(x) * std::cos(x);
    EXPECT_NEAR(c.q_value, reduced, 1e-12);
  }
}

TEST(ChannelSqueezing, RotationalCovariance) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0, 1);
  for (int i = 0; i < 200; ++i) {
    const QubitPolarization a = random_qubit(rng), b = random_qubit(rng);
    const Eigen::Matrix3d r = rotation_matrix(EulerAngles(u(rng) * 6, u(rng) * 3, u(rng) * 6));
    const QubitPolarization ra(r * a.vector()), rb(r * b.vector());
    EXPECT_NEAR(couple_spin1(a, b).weight, couple_spin1(ra, rb).weight, 1e-12);
    const double phi = u(rng) * kPi;
    EXPECT_NEAR(channel_squeezing(a, b, phi).q_value, channel_squeezing(ra, rb, phi).q_value, 1e-12);
    const Correlations c1 = correlations_oracle(a, b, phi), c2 = correlations_oracle(ra, rb, phi);
    EXPECT_NEAR(c1.xx, c2.xx, 1e-12);
    EXPECT_NEAR(c1.yy, c2.yy, 1e-12);
    EXPECT_NEAR(c1.zz, c2.zz, 1e-12);
    EXPECT_NEAR(c1.xz, c2.xz, 1e-12);
    EXPECT_NEAR(c1.zy, c2.zy, 1e-12);
    EXPECT_NEAR(c1.xy, c2.xy, 1e-12);
    const Correlations p1 = correlations(a, b, phi), p2 = correlations(ra, rb, phi);
    EXPECT_NEAR(p1.zz, p2.zz, 1e-12);
    EXPECT_NEAR(p1.xx, p2.xx, 1e-12);
  }
}

TEST(Correlations, PureParallelVanish) {
  const QubitPolarization z(0, 0, 1);
  for (const Correlations& c : {correlations(z, z, 0.0), correlations_oracle(z, z, 0.0)}) {
    EXPECT_NEAR(c.xx, 0.0, 1e-15);
    EXPECT_NEAR(c.yy, 0.0, 1e-15);
    EXPECT_NEAR(c.zz, 0.0, 1e-15);
    EXPECT_NEAR(c.xz, 0.0, 1e-15);
    EXPECT_NEAR(c.zy, 0.0, 1e-15);
    EXPECT_NEAR(c.xy, 0.0, 1e-15);
  }
}

TEST(Correlations, PrintedFormsAgreeWithOracleExceptZz) {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> u(0, 1);
  for (int i = 0; i < 500; ++i) {
    const QubitPolarization a = random_qubit(rng), b = random_qubit(rng);
    const double phi = u(rng) * 2 * kPi;
    const Correlations c = correlations(a, b, phi), o = correlations_oracle(a, b, phi);
    EXPECT_NEAR(c.xx, o.xx, 1e-10);
    EXPECT_NEAR(c.yy, o.yy, 1e-10);
    EXPECT_NEAR(c.xz, o.xz, 1e-10);
    EXPECT_NEAR(c.zy, o.zy, 1e-10);
    EXPECT_EQ(c.xy, 0.0);
  }
}

TEST(Correlations, SymmetricMagnitudesKillMixedTerms) {
  const Correlations c = correlations(at_angle(0.8, 0), at_angle(0.8, 1.1), 0.0);
  EXPECT_NEAR(c.xz, 0.0, 1e-15);
  EXPECT_NEAR(c.zy, 0.0, 1e-15);
}

TEST(Correlations, KnownMismatches) {
  // P(1) = 0.9, P(2) = 0.85, theta = 1: the printed C_zz disagrees with
  // the oracle; C_xy is printed as zero but is not once phi != 0.
  const QubitPolarization a = at_angle(0.9, 0), b = at_angle(0.85, 1.0);
  const Correlations o = correlations_oracle(a, b, 0.0);
  const Correlations c = correlations(a, b, 0.0);
  EXPECT_NEAR(o.zz, 0.013033, 1e-6);
  EXPECT_NEAR(c.zz, 0.000876, 1e-6);
  EXPECT_NEAR(o.xy, 0.0, 1e-12);
  EXPECT_GT(std::abs(correlations_oracle(a, b, 0.4).xy), 1e-3);

  const auto found = compare_correlations(a, b, 0.4);
  ASSERT_FALSE(found.empty());
  bool zz = false, xy = false;
  for (const auto& m : found) {
    zz |= m.component == "zz";
    xy |= m.component == "xy";
    EXPECT_FALSE(m.formula.empty());
    EXPECT_DOUBLE_EQ(m.phi, 0.4);
  }
  EXPECT_TRUE(zz);
  EXPECT_TRUE(xy);
}

TEST(Threshold, GridScan) {
  const ThresholdResult r = threshold_scan({400, 2});
  EXPECT_NEAR(r.equal_magnitude, std::sqrt(3.0) / 2, r.resolution + 1e-12);
  EXPECT_NEAR(r.pure_partner, 0.760345, r.resolution + 1e-6);
  EXPECT_THROW(threshold_scan({100, 1}), DomainError);
}
