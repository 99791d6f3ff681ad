#include "spinsq/table1.hpp"

#include <algorithm>
#include <cmath>

namespace spinsq {

namespace {

const HalfInt kThreeHalves = HalfInt::from_twice(3);

constexpr std::array<Table1Row, 8> kRows{{
    {kThreeHalves, 0.9, 0.3, 1.25, {1.17, 0.34, 0.7}},
    {kThreeHalves, 0.7, 0.5, 1.06, {1.5, 0.28, 0.6}},
    {kThreeHalves, 0.61, 0.49, 0.99, {1.54, 0.34, 0.55}},
    {kThreeHalves, 0.41, 0.63, 0.81, {1.82, 0.27, 0.45}},
    {HalfInt(1), 0.7, 0.65, 0.8, {0.876, 0.12, 0.12}},
    {HalfInt(1), 0.5, 0.45, 0.9, {0.81, 0.28, 0.37}},
    {HalfInt(1), 0.4, 0.65, 0.5, {0.94, 0.197, 0.204}},
    {HalfInt(1), 0.3, 0.49, 0.7, {0.83, 0.27, 0.286}},
}};

// Half a unit in the last printed decimal place.
double printed_resolution(double v) {
  double unit = 1.0;
  for (int d = 0; d < 6; ++d, unit /= 10)
    if (std::abs(std::round(v / unit) * unit - v) < 1e-12) break;
  return 0.5 * unit;
}

}  // namespace

std::span<const Table1Row> table1_rows() { return kRows; }

SpinDensity table1_state(const Table1Row& row) {
  TensorParams t(row.spin);
  t.set_paired(1, 0, row.t10);
  t.set_paired(2, 0, row.t20);
  t.set_paired(2, 2, row.t22);
  return from_tensors(t);
}

std::vector<Table1Result> run_table1(double tol) {
  std::vector<Table1Result> out;
  for (const Table1Row& row : kRows) {
    const SpinDensity rho = table1_state(row);
    Table1Result r{row, {}, {}, check_positivity(rho).psd};
    r.computed = {variance(rho, Eigen::Vector3d::UnitX()), variance(rho, Eigen::Vector3d::UnitY()),
                  0.5 * std::abs(polarization(rho).z())};
    for (int i = 0; i < 3; ++i) {
      const double allowed = std::max(tol, printed_resolution(row.printed[i]) + 1e-12);
      r.matches[i] = std::abs(r.computed[i] - row.printed[i]) <= allowed;
    }
    out.push_back(r);
  }
  return out;
}

}  // namespace spinsq
