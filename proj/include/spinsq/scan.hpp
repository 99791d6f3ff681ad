#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "spinsq/channel.hpp"

namespace spinsq {

/// Inclusive arithmetic range start, start + step, ..., <= stop. A single
/// value has start == stop.
struct ScanRange {
  double start = 0.0;
  double stop = 0.0;
  double step = 1.0;

  static ScanRange single(double v) { return {v, v, 1.0}; }
  std::vector<double> values() const;
};

/// Channel-spin sweep. Angles are in radians; P(1) lies along z and P(2) in
/// the xz plane at angle theta from it.
struct ScanConfig {
  ScanRange p1{1.0, 1.0, 1.0};
  ScanRange p2{1.0, 1.0, 1.0};
  ScanRange theta{0.0, 0.0, 1.0};
  ScanRange phi{0.0, 0.0, 1.0};
  int threads = 1;

  /// Throws DomainError for empty ranges, non-positive steps or magnitudes
  /// outside [0, 1].
  void validate() const;
};

/// One grid point. Frame-dependent fields are NaN when P(1) + P(2) = 0.
struct ScanRow {
  double theta, phi, p1_mag, p2_mag;
  double weight;
  double t1_0, t2_0, t2_2;  // in the channel special Lakin frame
  double variance_perp, sz_half, q_value;
  bool squeezed;
  Correlations corr;
};

/// Rows ordered p1 (outermost), p2, theta, phi (innermost), independent of
/// the number of threads.
std::vector<ScanRow> run_scan(const ScanConfig& config);

/// Mismatches between the printed correlation forms and the oracle over the
/// non-degenerate grid points.
std::vector<CorrelationMismatch> scan_mismatches(const ScanConfig& config, double tol = 1e-10);

inline constexpr const char* kScanCsvHeader =
    "theta_rad,phi_rad,p1_mag,p2_mag,weight,t1_0,t2_0,t2_2,variance_perp,sz_half,q_value,squeezed,"
    "c_xx,c_yy,c_zz,c_xz,c_zy,c_xy";

/// Header plus one line per row, 12 significant digits.
void write_scan_csv(std::ostream& os, const std::vector<ScanRow>& rows);
void write_scan_json(std::ostream& os, const std::vector<ScanRow>& rows);

}  // namespace spinsq
