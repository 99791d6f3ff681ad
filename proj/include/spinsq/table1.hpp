#pragma once

#include <array>
#include <span>
#include <vector>

#include "spinsq/density.hpp"

namespace spinsq {

/// A reference squeezed state in its special Lakin frame, given by its
/// non-zero tensors (t^2_2 = t^2_{-2} real), with the printed
/// (var S_x0, var S_y0, |<S_z0>|/2).
struct Table1Row {
  HalfInt spin;
  double t20;
  double t22;
  double t10;
  std::array<double, 3> printed;
};

std::span<const Table1Row> table1_rows();

/// Density matrix of a row (unit trace).
SpinDensity table1_state(const Table1Row& row);

struct Table1Result {
  Table1Row row;
  std::array<double, 3> computed;
  std::array<bool, 3> matches;
  /// Whether the printed tensors alone give a positive semi-definite state.
  bool psd;
};

/// Recomputes each row from the density matrix and flags cells differing
/// from the printed value by more than tol. A cell that rounds to the printed
/// digits also matches, since some entries carry only one decimal.
std::vector<Table1Result> run_table1(double tol = 0.01);

}  // namespace spinsq
