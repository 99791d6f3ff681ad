#include "spinsq/scan.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <json.hpp>
#include <ostream>

#include "parallel.hpp"
#include "spinsq/errors.hpp"
#include "spinsq/frames.hpp"

namespace spinsq {

namespace {

std::string format_value(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

struct GridPoint {
  double p1, p2, theta, phi;
};

std::vector<GridPoint> grid(const ScanConfig& config) {
  config.validate();
  std::vector<GridPoint> points;
  const auto p1s = config.p1.values(), p2s = config.p2.values();
  const auto thetas = config.theta.values(), phis = config.phi.values();
  points.reserve(p1s.size() * p2s.size() * thetas.size() * phis.size());
  for (double a : p1s)
    for (double b : p2s)
      for (double t : thetas)
        for (double f : phis) points.push_back({a, b, t, f});
  return points;
}

std::pair<QubitPolarization, QubitPolarization> pair_at(const GridPoint& g) {
  // Clamp rounding above 1 from range arithmetic.
  const double a = std::min(g.p1, 1.0), b = std::min(g.p2, 1.0);
  return {QubitPolarization(0.0, 0.0, a), QubitPolarization(b * std::sin(g.theta), 0.0, b * std::cos(g.theta))};
}

ScanRow evaluate(const GridPoint& g) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  const auto [a, b] = pair_at(g);
  const ChannelState state = couple_spin1(a, b);
  ScanRow row{g.theta, g.phi, g.p1, g.p2, state.weight, nan, nan, nan, nan, nan, nan, false,
              {nan, nan, nan, nan, nan, nan}};
  if ((a.vector() + b.vector()).norm() <= 1e-10) return row;

  const ChannelFrame frame = channel_geometry(a, b);
  const TensorParams local = rotate_tensors(state.params, frame.rotation);
  row.t1_0 = local.at(1, 0).real();
  row.t2_0 = local.at(2, 0).real();
  row.t2_2 = local.at(2, 2).real();
  const ChannelSqueezing sq = channel_squeezing(a, b, g.phi);
  row.variance_perp = sq.variance_perp;
  row.sz_half = 0.5 * sq.sz_expect;
  row.q_value = sq.q_value;
  row.squeezed = sq.squeezed;
  row.corr = correlations(a, b, g.phi);
  return row;
}

}  // namespace

std::vector<double> ScanRange::values() const {
  if (!(step > 0.0)) throw DomainError("scan step must be positive");
  if (stop < start) throw DomainError("scan range is empty");
  const auto count = static_cast<long>(std::floor((stop - start) / step + 1e-9)) + 1;
  std::vector<double> out;
  out.reserve(count);
  for (long i = 0; i < count; ++i) out.push_back(start + static_cast<double>(i) * step);
  return out;
}

void ScanConfig::validate() const {
  for (const ScanRange* r : {&p1, &p2, &theta, &phi}) {
    if (!(r->step > 0.0)) throw DomainError("scan step must be positive");
    if (!(r->stop >= r->start)) throw DomainError("scan range is empty");
  }
  for (const ScanRange* r : {&p1, &p2}) {
    if (r->start < 0.0 || r->stop > 1.0 + 1e-12) throw DomainError("polarization magnitudes must lie in [0, 1]");
  }
  if (threads < 1) throw DomainError("threads must be >= 1");
}

std::vector<ScanRow> run_scan(const ScanConfig& config) {
  const std::vector<GridPoint> points = grid(config);
  std::vector<ScanRow> rows(points.size());
  detail::parallel_for(static_cast<int>(points.size()), config.threads,
                       [&](int i) { rows[i] = evaluate(points[i]); });
  return rows;
}

std::vector<CorrelationMismatch> scan_mismatches(const ScanConfig& config, double tol) {
  std::vector<CorrelationMismatch> out;
  for (const GridPoint& g : grid(config)) {
    const auto [a, b] = pair_at(g);
    if ((a.vector() + b.vector()).norm() <= 1e-10) continue;
    auto found = compare_correlations(a, b, g.phi, tol);
    out.insert(out.end(), found.begin(), found.end());
  }
  return out;
}

void write_scan_csv(std::ostream& os, const std::vector<ScanRow>& rows) {
  os << kScanCsvHeader << '\n';
  for (const ScanRow& r : rows) {
    const double fields[] = {r.theta,   r.phi,      r.p1_mag,  r.p2_mag,        r.weight,  r.t1_0,
                             r.t2_0,    r.t2_2,     r.variance_perp, r.sz_half, r.q_value};
    for (double f : fields) os << format_value(f) << ',';
    os << (r.squeezed ? 1 : 0);
    for (double f : {r.corr.xx, r.corr.yy, r.corr.zz, r.corr.xz, r.corr.zy, r.corr.xy}) os << ',' << format_value(f);
    os << '\n';
  }
}

void write_scan_json(std::ostream& os, const std::vector<ScanRow>& rows) {
  auto num = [](double v) -> nlohmann::json { return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(); };
  nlohmann::json out = nlohmann::json::array();
  for (const ScanRow& r : rows) {
    out.push_back({{"theta_rad", num(r.theta)},
                   {"phi_rad", num(r.phi)},
                   {"p1_mag", num(r.p1_mag)},
                   {"p2_mag", num(r.p2_mag)},
                   {"weight", num(r.weight)},
                   {"t1_0", num(r.t1_0)},
                   {"t2_0", num(r.t2_0)},
                   {"t2_2", num(r.t2_2)},
                   {"variance_perp", num(r.variance_perp)},
                   {"sz_half", num(r.sz_half)},
                   {"q_value", num(r.q_value)},
                   {"squeezed", r.squeezed},
                   {"c_xx", num(r.corr.xx)},
                   {"c_yy", num(r.corr.yy)},
                   {"c_zz", num(r.corr.zz)},
                   {"c_xz", num(r.corr.xz)},
                   {"c_zy", num(r.corr.zy)},
                   {"c_xy", num(r.corr.xy)}});
  }
  os << out.dump(2) << '\n';
}

}  // namespace spinsq
