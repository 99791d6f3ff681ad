// spinsq: command-line front end for the spin squeezing library.
//
// Exit codes: 0 success, 2 input error, 3 unphysical state, 4 I/O error.

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "spinsq/angular.hpp"
#include "spinsq/channel.hpp"
#include "spinsq/density.hpp"
#include "spinsq/errors.hpp"
#include "spinsq/scan.hpp"
#include "spinsq/squeezing.hpp"
#include "spinsq/state_io.hpp"
#include "spinsq/table1.hpp"

namespace {

using nlohmann::json;
using namespace spinsq;

enum ExitCode { kOk = 0, kInput = 2, kUnphysical = 3, kIo = 4 };

constexpr double kDegree = std::numbers::pi / 180.0;

std::string fmt(double v, int digits = 15) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

double parse_number(const std::string& text) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw DomainError("not a number: '" + text + "'");
  }
  if (used != text.size()) throw DomainError("not a number: '" + text + "'");
  return v;
}

// "a", "a:b" or "a:b:s", scaled by `unit`; a missing step falls back to
// `default_step` (already in internal units).
ScanRange parse_range(const std::string& text, double unit, double default_step) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string piece; std::getline(ss, piece, ':');) parts.push_back(piece);
  if (parts.empty() || parts.size() > 3) throw DomainError("bad range '" + text + "'");
  const double start = parse_number(parts[0]) * unit;
  if (parts.size() == 1) return ScanRange::single(start);
  const double stop = parse_number(parts[1]) * unit;
  const double step = parts.size() == 3 ? parse_number(parts[2]) * unit : default_step;
  return {start, stop, step};
}

Eigen::Vector3d parse_vector(const std::string& text) {
  std::vector<double> v;
  std::stringstream ss(text);
  for (std::string piece; std::getline(ss, piece, ',');) v.push_back(parse_number(piece));
  if (v.size() != 3) throw DomainError("expected x,y,z but got '" + text + "'");
  return {v[0], v[1], v[2]};
}

// Writes to the named file, or stdout when the path is empty.
void emit(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    std::cout.flush();
    if (!std::cout) throw IoError("cannot write to standard output");
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out << text;
  out.close();
  if (!out) throw IoError("failed writing " + path);
}

SpinDensity load_density(const std::string& path) { return from_tensors(load_state_file(path)); }

// --- analyze -------------------------------------------------------------------------

struct AnalyzeArgs {
  std::string file;
  double grid_step = 15.0;
};

std::string run_analyze(const AnalyzeArgs& a, bool degrees) {
  const SpinDensity rho = load_density(a.file);
  const double step = degrees ? a.grid_step * kDegree : a.grid_step;
  if (!(step > 0.0)) throw DomainError("--grid-step must be positive");
  std::vector<double> grid;
  for (long i = 0;; ++i) {
    const double phi = static_cast<double>(i) * step;
    if (phi > std::numbers::pi + 1e-12) break;
    grid.push_back(phi);
  }
  return report_to_json(analyze(rho), grid).dump(2) + "\n";
}

// --- validate ------------------------------------------------------------------------

std::string run_validate(const std::string& file) {
  const TensorParams t = load_state_file(file);
  const SpinDensity rho = from_tensors(t);
  json out = positivity_to_json(check_positivity(rho));
  out["spin"] = t.spin().str();
  out["purity_residual"] = purity_residual(to_tensors(rho));
  const OrientationReport o = classify_orientation(rho);
  out["oriented"] = o.oriented;
  if (o.axis) out["orientation_axis"] = {o.axis->x(), o.axis->y(), o.axis->z()};
  if (o.populations) out["populations"] = *o.populations;
  return out.dump(2) + "\n";
}

// --- coeff ---------------------------------------------------------------------------

std::string run_coeff(const std::string& kind, const std::vector<std::string>& raw, bool degrees) {
  auto need = [&](std::size_t n) {
    if (raw.size() != n)
      throw DomainError(kind + " takes " + std::to_string(n) + " arguments, got " + std::to_string(raw.size()));
  };
  std::vector<HalfInt> j;
  auto halves = [&](std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) j.push_back(HalfInt::parse(raw[i]));
  };
  std::string out;
  auto line = [&](double value, const std::optional<exact::Surd>& exact) {
    out = fmt(value) + "\n";
    if (exact) out += "exact: " + exact->str() + "\n";
  };

  if (kind == "cg") {
    need(6);
    halves(6);
    line(clebsch_gordan(j[0], j[1], j[2], j[3], j[4], j[5]),
         clebsch_gordan_exact(j[0], j[1], j[2], j[3], j[4], j[5]));
  } else if (kind == "6j") {
    need(6);
    halves(6);
    line(wigner_6j(j[0], j[1], j[2], j[3], j[4], j[5]), wigner_6j_exact(j[0], j[1], j[2], j[3], j[4], j[5]));
  } else if (kind == "9j") {
    need(9);
    halves(9);
    for (const HalfInt& x : j)
      if (x.twice() < 0) throw DomainError("9-j arguments must be non-negative");
    line(wigner_9j(j[0], j[1], j[2], j[3], j[4], j[5], j[6], j[7], j[8]),
         wigner_9j_exact(j[0], j[1], j[2], j[3], j[4], j[5], j[6], j[7], j[8]));
  } else if (kind == "d") {
    // j m' m alpha beta gamma
    need(6);
    halves(3);
    const double unit = degrees ? kDegree : 1.0;
    const EulerAngles angles(parse_number(raw[3]) * unit, parse_number(raw[4]) * unit, parse_number(raw[5]) * unit);
    const std::complex<double> d = wigner_d(j[0], j[1], j[2], angles);
    out = fmt(d.real()) + (d.imag() < 0 ? " - " : " + ") + fmt(std::abs(d.imag())) + "i\n";
  } else {
    throw DomainError("unknown coefficient kind '" + kind + "' (cg, 6j, 9j, d)");
  }
  return out;
}

// --- table1 --------------------------------------------------------------------------

std::string run_table1(const std::string& format) {
  const auto results = spinsq::run_table1(0.01);
  static const char* kCols[3] = {"var_x0", "var_y0", "sz_half"};
  if (format == "json") {
    json rows = json::array();
    for (const auto& r : results) {
      json cells = json::array();
      for (int i = 0; i < 3; ++i)
        cells.push_back({{"column", kCols[i]},
                         {"printed", r.row.printed[i]},
                         {"computed", r.computed[i]},
                         {"status", r.matches[i] ? "match" : "discrepant"}});
      rows.push_back({{"spin", r.row.spin.str()},
                      {"t20", r.row.t20},
                      {"t22", r.row.t22},
                      {"t10", r.row.t10},
                      {"psd", r.psd},
                      {"cells", cells}});
    }
    return json{{"tolerance", 0.01}, {"rows", rows}}.dump(2) + "\n";
  }
  std::ostringstream os;
  if (format == "csv") {
    os << "spin,t20,t22,t10,column,printed,computed,status,psd\n";
    for (const auto& r : results)
      for (int i = 0; i < 3; ++i)
        os << r.row.spin << ',' << fmt(r.row.t20, 12) << ',' << fmt(r.row.t22, 12) << ',' << fmt(r.row.t10, 12)
           << ',' << kCols[i] << ',' << fmt(r.row.printed[i], 12) << ',' << fmt(r.computed[i], 12) << ','
           << (r.matches[i] ? "match" : "discrepant") << ',' << (r.psd ? 1 : 0) << '\n';
    return os.str();
  }
  char buf[160];
  for (const auto& r : results) {
    std::snprintf(buf, sizeof buf, "s=%-3s t20=%-5g t22=%-5g t10=%-5g%s\n", r.row.spin.str().c_str(), r.row.t20,
                  r.row.t22, r.row.t10, r.psd ? "" : "  (printed tensors alone are not positive semi-definite)");
    os << buf;
    for (int i = 0; i < 3; ++i) {
      std::snprintf(buf, sizeof buf, "    %-8s printed %-6g computed %-9.4f %s\n", kCols[i], r.row.printed[i],
                    r.computed[i], r.matches[i] ? "match" : "DISCREPANT");
      os << buf;
    }
  }
  return os.str();
}

// --- scan ----------------------------------------------------------------------------

struct ScanArgs {
  std::string p1 = "1";
  std::string p2 = "1";
  std::string theta = "0:180";
  std::string phi = "0";
  std::optional<double> grid_step;
  int threads = 1;
  std::string mismatch_log;
};

ScanConfig scan_config(const ScanArgs& a, bool degrees) {
  const double angle_unit = degrees ? kDegree : 1.0;
  if (!degrees && a.theta == "0:180") throw DomainError("--theta is required without --degrees");
  const double angle_step = a.grid_step ? *a.grid_step * angle_unit : kDegree;
  const double mag_step = a.grid_step ? *a.grid_step : 0.05;
  ScanConfig c;
  c.p1 = parse_range(a.p1, 1.0, mag_step);
  c.p2 = parse_range(a.p2, 1.0, mag_step);
  c.theta = parse_range(a.theta, angle_unit, angle_step);
  c.phi = parse_range(a.phi, angle_unit, angle_step);
  c.threads = a.threads;
  c.validate();
  return c;
}

void report_mismatches(const ScanConfig& c, const std::string& log_path) {
  const auto found = scan_mismatches(c);
  if (!log_path.empty()) {
    std::ostringstream os;
    os << "component,formula,closed_form,oracle,p1_mag,p2_mag,theta_rad,phi_rad\n";
    for (const auto& m : found)
      os << m.component << ",\"" << m.formula << "\"," << fmt(m.closed_form, 12) << ',' << fmt(m.oracle, 12) << ','
         << fmt(m.p1_mag, 12) << ',' << fmt(m.p2_mag, 12) << ',' << fmt(m.theta, 12) << ',' << fmt(m.phi, 12)
         << '\n';
    emit(log_path, os.str());
  }
  std::map<std::string, std::pair<std::string, int>> by_component;
  for (const auto& m : found) {
    auto& entry = by_component[m.component];
    entry.first = m.formula;
    ++entry.second;
  }
  for (const auto& [component, entry] : by_component)
    std::cerr << "closed form disagrees with oracle at " << entry.second << " grid points: " << entry.first << "\n";
}

std::string run_scan_cmd(const ScanArgs& a, bool degrees, const std::string& format) {
  const ScanConfig c = scan_config(a, degrees);
  const auto rows = run_scan(c);
  std::ostringstream os;
  if (format == "json")
    write_scan_json(os, rows);
  else
    write_scan_csv(os, rows);
  report_mismatches(c, a.mismatch_log);
  return os.str();
}

// --- channel -------------------------------------------------------------------------

json correlations_json(const Correlations& c) {
  return {{"xx", c.xx}, {"yy", c.yy}, {"zz", c.zz}, {"xz", c.xz}, {"zy", c.zy}, {"xy", c.xy}};
}

std::string run_channel(const std::string& p1s, const std::string& p2s, const std::string& phis, bool degrees) {
  const QubitPolarization p1(parse_vector(p1s)), p2(parse_vector(p2s));
  const double phi = parse_number(phis) * (degrees ? kDegree : 1.0);
  const ChannelState state = couple_spin1(p1, p2);
  json out;
  out["weight"] = state.weight;
  out["theta_rad"] = polarization_angle(p1, p2);
  out["phi_rad"] = phi;
  out["tensors"] = state_to_json(state.params)["tensors"];
  const ChannelFrame frame = channel_geometry(p1, p2);
  out["frame"] = {{"x0", {frame.axes(0, 0), frame.axes(1, 0), frame.axes(2, 0)}},
                  {"y0", {frame.axes(0, 1), frame.axes(1, 1), frame.axes(2, 1)}},
                  {"z0", {frame.axes(0, 2), frame.axes(1, 2), frame.axes(2, 2)}}};
  const ChannelSqueezing sq = channel_squeezing(p1, p2, phi);
  out["variance_perp"] = sq.variance_perp;
  out["sz_expect"] = sq.sz_expect;
  out["q_value"] = sq.q_value;
  out["squeezed"] = sq.squeezed;
  out["correlations"] = correlations_json(correlations(p1, p2, phi));
  out["correlations_oracle"] = correlations_json(correlations_oracle(p1, p2, phi));
  json mismatches = json::array();
  for (const auto& m : compare_correlations(p1, p2, phi))
    mismatches.push_back(
        {{"component", m.component}, {"formula", m.formula}, {"closed_form", m.closed_form}, {"oracle", m.oracle}});
  out["mismatches"] = mismatches;
  return out.dump(2) + "\n";
}

// --- threshold -----------------------------------------------------------------------

std::string run_threshold(int points, int threads) {
  const ThresholdResult r = threshold_scan({points, threads});
  return json{{"equal_magnitude", r.equal_magnitude},
              {"pure_partner", r.pure_partner},
              {"resolution", r.resolution},
              {"points", points}}
             .dump(2) +
         "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spin squeezing of polarized spin systems"};
  app.require_subcommand(1);
  app.fallthrough();

  bool degrees = false;
  std::string output;
  std::string format = "csv";
  app.add_flag("--degrees", degrees, "Angles on the command line are in degrees");
  app.add_option("-o,--output", output, "Write the result here instead of stdout");
  app.add_option("--format", format, "Output format for table1 and scan")->check(CLI::IsMember({"csv", "json", "text"}));

  AnalyzeArgs analyze_args;
  auto* analyze_cmd = app.add_subcommand("analyze", "Squeezing report for a state file (JSON)");
  analyze_cmd->add_option("file", analyze_args.file, "State file")->required();
  analyze_cmd->add_option("--grid-step", analyze_args.grid_step, "Azimuth sampling step for variance_at (15 deg)");

  std::string validate_file;
  auto* validate_cmd = app.add_subcommand("validate", "Positivity, purity and orientation of a state file");
  validate_cmd->add_option("file", validate_file, "State file")->required();

  std::string coeff_kind;
  std::vector<std::string> coeff_args;
  auto* coeff_cmd = app.add_subcommand("coeff", "Coupling coefficient or rotation matrix element");
  coeff_cmd->add_option("kind", coeff_kind, "cg | 6j | 9j | d")->required();
  coeff_cmd->add_option("args", coeff_args, "Quantum numbers (\"3/2\" or 1.5), then angles for d")->required();
  coeff_cmd->allow_extras(false);

  auto* table1_cmd = app.add_subcommand("table1", "Recompute the reference squeezed-state table");

  ScanArgs scan_args;
  auto* scan_cmd = app.add_subcommand("scan", "Channel-spin sweep over magnitudes and angles");
  scan_cmd->add_option("--p1", scan_args.p1, "|P(1)| as a, a:b or a:b:step");
  scan_cmd->add_option("--p2", scan_args.p2, "|P(2)| as a, a:b or a:b:step");
  scan_cmd->add_option("--theta", scan_args.theta, "Angle between P(1) and P(2)");
  scan_cmd->add_option("--phi", scan_args.phi, "Azimuth of the transverse component");
  scan_cmd->add_option("--grid-step", scan_args.grid_step, "Step for ranges written without one");
  scan_cmd->add_option("--threads", scan_args.threads, "Worker threads")->check(CLI::PositiveNumber);
  scan_cmd->add_option("--mismatch-log", scan_args.mismatch_log, "CSV of closed-form/oracle correlation mismatches");

  std::string ch_p1, ch_p2, ch_phi = "0";
  auto* channel_cmd = app.add_subcommand("channel", "Channel spin 1 at a single pair of polarizations");
  channel_cmd->add_option("--p1", ch_p1, "P(1) as x,y,z")->required();
  channel_cmd->add_option("--p2", ch_p2, "P(2) as x,y,z")->required();
  channel_cmd->add_option("--phi", ch_phi, "Azimuth of the transverse component");

  int th_points = 400, th_threads = 1;
  auto* threshold_cmd = app.add_subcommand("threshold", "Least polarizations that admit squeezing");
  threshold_cmd->add_option("--points", th_points, "Grid points per axis (>= 200)");
  threshold_cmd->add_option("--threads", th_threads, "Worker threads")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInput;
  }

  try {
    std::string text;
    if (*analyze_cmd) {
      text = run_analyze(analyze_args, degrees);
    } else if (*validate_cmd) {
      text = run_validate(validate_file);
    } else if (*coeff_cmd) {
      text = run_coeff(coeff_kind, coeff_args, degrees);
    } else if (*table1_cmd) {
      text = run_table1(app.count("--format") ? format : "text");
    } else if (*scan_cmd) {
      text = run_scan_cmd(scan_args, degrees, format);
    } else if (*channel_cmd) {
      text = run_channel(ch_p1, ch_p2, ch_phi, degrees);
    } else if (*threshold_cmd) {
      text = run_threshold(th_points, th_threads);
    }
    emit(output, text);
  } catch (const UnphysicalState& e) {
    std::cerr << "error: state is not positive semi-definite; eigenvalues:";
    for (double v : e.eigenvalues()) std::cerr << ' ' << fmt(v, 6);
    std::cerr << "\n";
    return kUnphysical;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIo;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInput;
  } catch (const FrameUndefined& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInput;
  }
  return kOk;
}
