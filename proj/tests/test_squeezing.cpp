#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "spinsq/frames.hpp"
#include "spinsq/squeezing.hpp"
#include "spinsq/table1.hpp"
#include "support.hpp"

using namespace spinsq;

namespace {

constexpr double kPi = std::numbers::pi;

HalfInt h(int twice) { return HalfInt::from_twice(twice); }

const Table1Row& find_row(HalfInt s, double t20) {
  for (const auto& row : table1_rows())
    if (row.spin == s && row.t20 == t20) return row;
  throw std::logic_error("row not found");
}

}  // namespace

TEST(Analyze, CoherentStateIsBoundary) {
  for (int ts = 2; ts <= 6; ++ts) {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(ts + 1, ts + 1);
    m(0, 0) = 1.0;
    const SqueezingReport r = analyze(SpinDensity(h(ts), m));
    EXPECT_NEAR(r.min_variance, 0.25 * ts, 1e-12);
    EXPECT_NEAR(r.sz_half, 0.25 * ts, 1e-12);
    EXPECT_NEAR(r.q_margin, 0.0, 1e-12);
    EXPECT_FALSE(r.squeezed);
    EXPECT_NEAR(r.xi, 1.0, 1e-12);
  }
}

TEST(Analyze, SpinOneTableStateSqueezedAlongY0) {
  const SqueezingReport r = analyze(table1_state(find_row(1, 0.5)));
  EXPECT_TRUE(r.squeezed);
  EXPECT_NEAR(r.var_y0, 0.28, 0.01);
  EXPECT_NEAR(r.sz_half, 0.37, 0.01);
  EXPECT_NEAR(r.var_x0, 0.81, 0.01);
  EXPECT_NEAR(r.phi_min, kPi / 2, 1e-15);
  EXPECT_NEAR(r.min_variance, r.var_y0, 0.0);
  EXPECT_NEAR(r.variance_at(0.0), r.var_x0, 1e-15);
  EXPECT_NEAR(r.variance_at(kPi / 2), r.var_y0, 1e-15);
  ASSERT_TRUE(r.frame.has_value());
  EXPECT_TRUE(r.reason.empty());
}

TEST(Analyze, UnpolarizedHasReason) {
  const SqueezingReport r = analyze(SpinDensity(1, Eigen::MatrixXcd::Identity(3, 3)));
  EXPECT_FALSE(r.squeezed);
  EXPECT_EQ(r.reason, "no vector polarization");
  EXPECT_FALSE(r.frame.has_value());
}

TEST(Analyze, RejectsNonPositiveStates) {
  TensorParams t(1);
  t.set(1, 0, 2.0);
  try {
    analyze(from_tensors(t));
    FAIL() << "expected UnphysicalState";
  } catch (const UnphysicalState& e) {
    EXPECT_LT(e.eigenvalues().minCoeff(), 0.0);
  }
}

TEST(Analyze, MatchesDirectVarianceAlongFrameAxes) {
  std::mt19937_64 rng(1);
  for (int ts = 2; ts <= 6; ++ts)
    for (int i = 0; i < 30; ++i) {
      const SpinDensity rho(h(ts), testsupport::random_density(ts + 1, rng));
      const SqueezingReport r = analyze(rho);
      const Eigen::Matrix3d axes = frame_axes(r.frame->rotation);
      EXPECT_NEAR(r.var_x0, variance(rho, axes.col(0)), 1e-10);
      EXPECT_NEAR(r.var_y0, variance(rho, axes.col(1)), 1e-10);
      const double phi = 0.37 * i;
      const Eigen::Vector3d n = std::cos(phi) * axes.col(0) + std::sin(phi) * axes.col(1);
      EXPECT_NEAR(r.variance_at(phi), variance(rho, n), 1e-10);
      EXPECT_NEAR(r.sz_half, 0.5 * polarization(rho).norm(), 1e-12);
    }
}

TEST(Analyze, FrameIndependence) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(0, 1);
  for (int ts = 2; ts <= 4; ++ts)
    for (int i = 0; i < 50; ++i) {
      const SpinDensity rho(h(ts), testsupport::random_pure(ts + 1, rng));
      const EulerAngles e(u(rng) * 2 * kPi, u(rng) * kPi, u(rng) * 2 * kPi);
      const SpinDensity turned = from_tensors(rotate_tensors(to_tensors(rho), e));
      const SqueezingReport a = analyze(rho), b = analyze(turned);
      EXPECT_EQ(a.squeezed, b.squeezed);
      EXPECT_NEAR(a.q_margin, b.q_margin, 1e-10);
    }
}

TEST(Analyze, ConsistentWithLakinCriterion) {
  std::mt19937_64 rng(3);
  for (int ts = 2; ts <= 6; ++ts)
    for (int i = 0; i < 30; ++i) {
      const SpinDensity rho(h(ts), testsupport::random_pure(ts + 1, rng));
      const SqueezingReport r = analyze(rho);
      const TensorParams& t = r.frame->params;
      const double f1sq = std::pow(rank1_factor(h(ts)), 2);
      for (double phi : {0.0, 0.4, kPi / 2}) {
        const double margin = lf_criterion(h(ts), t.at(1, 0).real(), t.at(2, 0).real(), t.at(2, 2).real(), phi);
        EXPECT_NEAR(margin / f1sq, r.sz_half - r.variance_at(phi), 1e-10);
      }
    }
}

TEST(Analyze, OrientedStatesNeverSqueezed) {
  std::mt19937_64 rng(4);
  for (int ts = 1; ts <= 4; ++ts)
    for (int i = 0; i < 500; ++i) {
      const SpinDensity rho(h(ts), testsupport::random_oriented(0.5 * ts, rng));
      ASSERT_FALSE(analyze(rho).squeezed);
    }
}

TEST(Analyze, SpinHalfNeverSqueezed) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 500; ++i) {
    const SpinDensity rho(h(1), i % 2 ? testsupport::random_pure(2, rng) : testsupport::random_density(2, rng));
    const SqueezingReport r = analyze(rho);
    ASSERT_FALSE(r.squeezed);
    EXPECT_LE(r.q_margin, 1e-12);
  }
}

TEST(LakinCriterion, TableRowTwo) {
  const Table1Row& row = find_row(h(3), 0.7);
  EXPECT_GT(lf_criterion(h(3), row.t10, row.t20, row.t22, kPi / 2), 0.0);
  EXPECT_LT(lf_criterion(h(3), row.t10, row.t20, row.t22, 0.0), 0.0);
}

TEST(LakinCriterion, VectorOnlyNeverSqueezes) {
  const double f1 = rank1_factor(1);
  for (double t10 : {0.0, 0.3, 0.9, std::sqrt(1.5)}) {
    const double m = lf_criterion(1, t10, 0.0, 0.0, 0.3);
    EXPECT_NEAR(m, 0.5 * f1 * t10 - 1.0, 1e-15);
    EXPECT_LE(m, 0.0);
  }
  EXPECT_THROW(lf_criterion(h(1), 1.0, 0.0, 0.0, 0.0), DomainError);
}

TEST(OrientedMargin, Examples) {
  const double up[2] = {1.0, 0.0};
  EXPECT_NEAR(oriented_margin(h(1), up), 0.0, 1e-15);
  const double top[3] = {1.0, 0.0, 0.0};
  EXPECT_NEAR(oriented_margin(1, top), 0.0, 1e-15);
  const double flat[3] = {1.0 / 3, 1.0 / 3, 1.0 / 3};
  EXPECT_NEAR(oriented_margin(1, flat), -(2.0 - 2.0 / 3), 1e-15);

  const double wrong_size[2] = {0.5, 0.5};
  EXPECT_THROW(oriented_margin(1, wrong_size), DomainError);
  const double negative[3] = {1.2, -0.1, -0.1};
  EXPECT_THROW(oriented_margin(1, negative), DomainError);
  const double unnormalised[3] = {0.5, 0.5, 0.5};
  EXPECT_THROW(oriented_margin(1, unnormalised), DomainError);
}

TEST(OrientedMargin, NeverPositive) {
  std::mt19937_64 rng(6);
  for (int ts = 1; ts <= 5; ++ts)
    for (int i = 0; i < 10000; ++i) {
      const auto p = testsupport::random_populations(ts + 1, rng);
      ASSERT_LE(oriented_margin(h(ts), p), 1e-12);
    }
}
