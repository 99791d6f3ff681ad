#include "spinsq/channel.hpp"

#include <cmath>
#include <limits>
#include <unsupported/Eigen/KroneckerProduct>

#include "parallel.hpp"
#include "spinsq/errors.hpp"
#include "spinsq/tensor_ops.hpp"

namespace spinsq {

namespace {

using Complex = std::complex<double>;
using Spherical = std::array<Complex, 3>;  // q = +1, 0, -1

constexpr double kDegenerate = 1e-10;
const HalfInt kHalf = HalfInt::from_twice(1);

Complex component(const Spherical& v, int q) { return v[1 - q]; }

// Rank-k spherical coupling of two rank <= 1 objects given as q -> value maps.
template <typename A, typename B>
Complex couple(int k1, A&& a, int k2, B&& b, int k, int q) {
  Complex out = 0.0;
  for (int q1 = -k1; q1 <= k1; ++q1) {
    const int q2 = q - q1;
    if (q2 < -k2 || q2 > k2) continue;
    out += clebsch_gordan(HalfInt(k1), HalfInt(k2), HalfInt(k), HalfInt(q1), HalfInt(q2), HalfInt(q)) * a(q1) *
           b(q2);
  }
  return out;
}

Eigen::Matrix2cd qubit_density(const Eigen::Vector3d& p) {
  const SpinMatrices s = spin_matrices(kHalf);
  return 0.5 * Eigen::Matrix2cd::Identity() + (p.x() * s.x + p.y() * s.y + p.z() * s.z);
}

// Columns |1 m>, m = 1, 0, -1, in the product basis |m1 m2>, m = +1/2 first.
Eigen::Matrix<double, 4, 3> spin1_isometry() {
  Eigen::Matrix<double, 4, 3> v = Eigen::Matrix<double, 4, 3>::Zero();
  for (int col = 0; col < 3; ++col) {
    const HalfInt m(1 - col);
    for (int i1 = 0; i1 < 2; ++i1) {
      for (int i2 = 0; i2 < 2; ++i2) {
        const HalfInt m1 = HalfInt::from_twice(1 - 2 * i1);
        const HalfInt m2 = HalfInt::from_twice(1 - 2 * i2);
        v(2 * i1 + i2, col) = clebsch_gordan(kHalf, kHalf, HalfInt(1), m1, m2, m);
      }
    }
  }
  return v;
}

Eigen::Matrix4cd projected_pair(const QubitPolarization& p1, const QubitPolarization& p2) {
  static const Eigen::Matrix<double, 4, 3> v = spin1_isometry();
  const Eigen::Matrix4cd product = Eigen::kroneckerProduct(qubit_density(p1.vector()), qubit_density(p2.vector()));
  const Eigen::Matrix4d projector = v * v.transpose();
  return projector * product * projector;
}

struct PairInvariants {
  double p1_sq, p2_sq, dot, sum_sq, cross_sq, sin_sq;
};

PairInvariants invariants(const QubitPolarization& p1, const QubitPolarization& p2) {
  const Eigen::Vector3d& a = p1.vector();
  const Eigen::Vector3d& b = p2.vector();
  PairInvariants r{a.squaredNorm(), b.squaredNorm(), a.dot(b), (a + b).squaredNorm(), a.cross(b).squaredNorm(), 0.0};
  const double mags = r.p1_sq * r.p2_sq;
  r.sin_sq = mags > 0.0 ? r.cross_sq / mags : 0.0;
  return r;
}

void require_frame(const PairInvariants& inv) {
  if (std::sqrt(inv.sum_sq) <= kDegenerate) {
    throw FrameUndefined("LakinFrameUndefined", "P(1) + P(2) vanishes");
  }
}

}  // namespace

QubitPolarization::QubitPolarization(const Eigen::Vector3d& p) : p_(p) {
  if (!p.allFinite() || p.norm() > 1.0 + 1e-12) throw DomainError("qubit polarization must satisfy |P| <= 1");
}

double polarization_angle(const QubitPolarization& p1, const QubitPolarization& p2) {
  const Eigen::Vector3d& a = p1.vector();
  const Eigen::Vector3d& b = p2.vector();
  if (a.norm() == 0.0 || b.norm() == 0.0) return 0.0;
  return std::atan2(a.cross(b).norm(), a.dot(b));
}

ChannelState couple_spin1(const QubitPolarization& p1, const QubitPolarization& p2) {
  const double dot = p1.vector().dot(p2.vector());
  const Spherical a = spherical_components(p1.vector());
  const Spherical b = spherical_components(p2.vector());

  TensorParams t(HalfInt(1));
  const double vec_scale = std::sqrt(6.0) / (3.0 + dot);
  const double align_scale = 2.0 * std::sqrt(3.0) / (3.0 + dot);
  for (int q = -1; q <= 1; ++q) t.set(1, q, vec_scale * (component(a, q) + component(b, q)));
  for (int q = -2; q <= 2; ++q) {
    t.set(2, q, align_scale * couple(1, [&](int x) { return component(a, x); }, 1,
                                     [&](int x) { return component(b, x); }, 2, q));
  }
  return {(3.0 + dot) / 12.0, t};
}

TensorParams couple_spin1_ninej(const QubitPolarization& p1, const QubitPolarization& p2) {
  const double dot = p1.vector().dot(p2.vector());
  const Spherical a = spherical_components(p1.vector());
  const Spherical b = spherical_components(p2.vector());
  // Spin-1/2 tensors: t^0_0 = 1, t^1_q = P_q.
  auto qubit_tensor = [](const Spherical& v) {
    return [&v](int k, int q) -> Complex { return k == 0 ? Complex(1.0) : component(v, q); };
  };
  const auto ta = qubit_tensor(a);
  const auto tb = qubit_tensor(b);

  TensorParams t(HalfInt(1));
  const double scale = 6.0 * std::sqrt(3.0) / (3.0 + dot);
  for (int k = 1; k <= 2; ++k) {
    for (int q = -k; q <= k; ++q) {
      Complex value = 0.0;
      for (int k1 = 0; k1 <= 1; ++k1) {
        for (int k2 = 0; k2 <= 1; ++k2) {
          const double nine_j =
              wigner_9j(kHalf, kHalf, HalfInt(k1), kHalf, kHalf, HalfInt(k2), HalfInt(1), HalfInt(1), HalfInt(k));
          if (nine_j == 0.0) continue;
          const Complex coupled = couple(
              k1, [&](int x) { return ta(k1, x); }, k2, [&](int x) { return tb(k2, x); }, k, q);
          value += std::sqrt((2.0 * k1 + 1.0) * (2.0 * k2 + 1.0)) * nine_j * coupled;
        }
      }
      t.set(k, q, scale * value);
    }
  }
  return t;
}

SpinDensity project_oracle(const QubitPolarization& p1, const QubitPolarization& p2) {
  static const Eigen::Matrix<double, 4, 3> v = spin1_isometry();
  const Eigen::Matrix4cd product = Eigen::kroneckerProduct(qubit_density(p1.vector()), qubit_density(p2.vector()));
  return SpinDensity(HalfInt(1), v.transpose() * product * v);
}

ChannelFrame channel_geometry(const QubitPolarization& p1, const QubitPolarization& p2) {
  const PairInvariants inv = invariants(p1, p2);
  require_frame(inv);
  const Eigen::Vector3d z0 = (p1.vector() + p2.vector()).normalized();
  Eigen::Vector3d x0 = p1.vector() - p1.vector().dot(z0) * z0;
  if (x0.norm() < 1e-12) {
    // Collinear pair: the azimuth is free; take the axis nearest to x.
    const Eigen::Vector3d seed = std::abs(z0.x()) < 0.9 ? Eigen::Vector3d::UnitX() : Eigen::Vector3d::UnitY();
    x0 = seed - seed.dot(z0) * z0;
  }
  x0.normalize();
  ChannelFrame frame;
  frame.axes.col(0) = x0;
  frame.axes.col(1) = z0.cross(x0);
  frame.axes.col(2) = z0;
  frame.rotation = euler_from_rotation(frame.axes);
  frame.p1 = frame.axes.transpose() * p1.vector();
  frame.p2 = frame.axes.transpose() * p2.vector();
  return frame;
}

ChannelSqueezing channel_squeezing(const QubitPolarization& p1, const QubitPolarization& p2, double phi) {
  const PairInvariants inv = invariants(p1, p2);
  require_frame(inv);
  const double sum = std::sqrt(inv.sum_sq);
  const double cos_sq = std::cos(phi) * std::cos(phi);
  ChannelSqueezing out;
  out.variance_perp = 2.0 * (inv.sum_sq - inv.cross_sq * cos_sq) / ((3.0 + inv.dot) * inv.sum_sq);
  out.sz_expect = 2.0 * sum / (3.0 + inv.dot);
  out.q_value = 0.5 * sum + inv.cross_sq * cos_sq / inv.sum_sq - 1.0;
  out.squeezed = out.q_value > 1e-12;
  return out;
}

Correlations correlations(const QubitPolarization& p1, const QubitPolarization& p2, double phi) {
  const PairInvariants inv = invariants(p1, p2);
  require_frame(inv);
  const double a2 = inv.p1_sq, b2 = inv.p2_sq, pd = inv.dot, ps2 = inv.sum_sq;
  const double cross = std::sqrt(inv.cross_sq);
  const double pn = 4.0 * a2 * b2 + 2.0 * pd * (a2 + b2) - inv.sin_sq;
  const double cos2phi = std::cos(2.0 * phi);

  Correlations c;
  c.xx = (ps2 - pd * (a2 + b2) - 2.0 * a2 * b2 * (1.0 + inv.sin_sq * cos2phi)) / (4.0 * (3.0 + pd) * ps2);
  c.yy = (ps2 - 2.0 * a2 * b2 * (1.0 - inv.sin_sq * cos2phi) - pd * (a2 + b2)) / (4.0 * (3.0 + pd) * ps2);
  c.xz = cross * (b2 - a2) * std::cos(phi) / (2.0 * (3.0 + pd) * ps2);
  c.zz = 1.0 / 12.0 - ps2 / ((3.0 + pd) * (3.0 + pd)) + pn / (3.0 * (3.0 + pd) * ps2);
  c.zy = (a2 - b2) * cross * std::sin(phi) / (2.0 * (3.0 + pd) * ps2);
  c.xy = 0.0;
  return c;
}

Correlations correlations_oracle(const QubitPolarization& p1, const QubitPolarization& p2, double phi) {
  const ChannelFrame frame = channel_geometry(p1, p2);
  Eigen::Matrix4cd state = projected_pair(p1, p2);
  state /= state.trace().real();

  const Eigen::Vector3d x0 = frame.axes.col(0), y0 = frame.axes.col(1), z0 = frame.axes.col(2);
  const Eigen::Vector3d ex = std::cos(phi) * x0 + std::sin(phi) * y0;
  const Eigen::Vector3d ey = -std::sin(phi) * x0 + std::cos(phi) * y0;

  const SpinMatrices s = spin_matrices(kHalf);
  const Eigen::Matrix2cd id = Eigen::Matrix2cd::Identity();
  auto first = [&](const Eigen::Vector3d& n) -> Eigen::Matrix4cd {
    return Eigen::kroneckerProduct(Eigen::Matrix2cd(s.along(n)), id);
  };
  auto second = [&](const Eigen::Vector3d& n) -> Eigen::Matrix4cd {
    return Eigen::kroneckerProduct(id, Eigen::Matrix2cd(s.along(n)));
  };
  auto expect = [&](const Eigen::Matrix4cd& op) { return (state * op).trace().real(); };
  auto corr = [&](const Eigen::Vector3d& a, const Eigen::Vector3d& b) {
    const Eigen::Matrix4cd sa = first(a), sb = second(b);
    return expect(sa * sb) - expect(sa) * expect(sb);
  };

  Correlations c;
  c.xx = corr(ex, ex);
  c.yy = corr(ey, ey);
  c.zz = corr(z0, z0);
  c.xz = corr(ex, z0);
  c.zy = corr(z0, ey);
  c.xy = corr(ex, ey);
  return c;
}

std::vector<CorrelationMismatch> compare_correlations(const QubitPolarization& p1, const QubitPolarization& p2,
                                                      double phi, double tol) {
  const Correlations closed = correlations(p1, p2, phi);
  const Correlations oracle = correlations_oracle(p1, p2, phi);
  const double theta = polarization_angle(p1, p2);

  struct Entry {
    const char* name;
    const char* formula;
    double Correlations::*field;
  };
  static constexpr Entry kEntries[] = {
      {"xx", "C_xx = [Ps^2 - Pd(P1^2+P2^2) - 2P1^2P2^2(1 + sin^2(theta) cos 2phi)] / [4(3+Pd)Ps^2]", &Correlations::xx},
      {"yy", "C_yy = [Ps^2 - 2P1^2P2^2(1 - sin^2(theta) cos 2phi) - Pd(P1^2+P2^2)] / [4(3+Pd)Ps^2]", &Correlations::yy},
      {"zz", "C_zz = 1/12 - Ps^2/(3+Pd)^2 + Pn/[3(3+Pd)Ps^2], Pn = 4P1^2P2^2 + 2Pd(P1^2+P2^2) - sin^2(theta)",
       &Correlations::zz},
      {"xz", "C_xz = |P1 x P2|(P2^2 - P1^2) cos(phi) / [2(3+Pd)Ps^2]", &Correlations::xz},
      {"zy", "C_zy = (P1^2 - P2^2)|P1 x P2| sin(phi) / [2(3+Pd)Ps^2]", &Correlations::zy},
      {"xy", "C_xy = 0", &Correlations::xy},
  };

  std::vector<CorrelationMismatch> out;
  for (const auto& e : kEntries) {
    const double a = closed.*(e.field);
    const double b = oracle.*(e.field);
    if (std::abs(a - b) > tol) {
      out.push_back({e.name, e.formula, a, b, p1.magnitude(), p2.magnitude(), theta, phi});
    }
  }
  return out;
}

ThresholdResult threshold_scan(const ThresholdConfig& config) {
  if (config.points < 200) throw DomainError("threshold scan needs at least 200 points per axis");
  const int n = config.points;
  const double step = 1.0 / (n - 1);
  const double pi = std::acos(-1.0);

  auto squeezes_somewhere = [&](double mag1, double mag2) {
    const QubitPolarization a(0.0, 0.0, mag1);
    for (int j = 0; j < n; ++j) {
      const double theta = pi * j / (n - 1);
      const QubitPolarization b(mag2 * std::sin(theta), 0.0, mag2 * std::cos(theta));
      if ((a.vector() + b.vector()).norm() <= kDegenerate) continue;
      if (channel_squeezing(a, b, 0.0).squeezed) return true;
    }
    return false;
  };

  std::vector<char> equal(n, 0), pure(n, 0);
  detail::parallel_for(n, config.threads, [&](int i) {
    const double mag = i * step;
    equal[i] = squeezes_somewhere(mag, mag);
    pure[i] = squeezes_somewhere(mag, 1.0);
  });

  const double none = std::numeric_limits<double>::quiet_NaN();
  ThresholdResult result{none, none, step};
  for (int i = 0; i < n; ++i) {
    if (equal[i]) {
      result.equal_magnitude = i * step;
      break;
    }
  }
  for (int i = 0; i < n; ++i) {
    if (pure[i]) {
      result.pure_partner = i * step;
      break;
    }
  }
  return result;
}

}  // namespace spinsq
