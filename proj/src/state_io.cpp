#include "spinsq/state_io.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace spinsq {

namespace {

using nlohmann::json;

HalfInt parse_spin(const json& value) {
  HalfInt s;
  if (value.is_string()) {
    try {
      s = HalfInt::parse(value.get<std::string>());
    } catch (const DomainError& e) {
      throw SchemaError(std::string("spin: ") + e.what());
    }
  } else if (value.is_number()) {
    const double v = value.get<double>();
    if (std::abs(2.0 * v - std::round(2.0 * v)) > 1e-9) throw SchemaError("spin must be a half-integer");
    s = HalfInt::from_twice(static_cast<int>(std::lround(2.0 * v)));
  } else {
    throw SchemaError("\"spin\" must be a string or number");
  }
  if (s.twice() < 1) throw SchemaError("spin must be at least 1/2");
  return s;
}

int require_int(const json& entry, const char* key) {
  if (!entry.contains(key) || !entry[key].is_number_integer()) {
    throw SchemaError(std::string("tensor entry needs integer \"") + key + "\"");
  }
  return entry[key].get<int>();
}

double optional_number(const json& entry, const char* key, double fallback) {
  if (!entry.contains(key)) return fallback;
  if (!entry[key].is_number()) throw SchemaError(std::string("\"") + key + "\" must be a number");
  return entry[key].get<double>();
}

json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(); }

}  // namespace

TensorParams parse_state(const json& doc) {
  if (!doc.is_object()) throw SchemaError("state must be a JSON object");
  if (!doc.contains("spin")) throw SchemaError("state needs \"spin\"");
  const HalfInt spin = parse_spin(doc["spin"]);
  const double trace = optional_number(doc, "trace", 1.0);
  if (!(trace > 0.0)) throw SchemaError("\"trace\" must be positive");

  TensorParams t(spin, trace);
  if (!doc.contains("tensors")) return t;
  if (!doc["tensors"].is_array()) throw SchemaError("\"tensors\" must be an array");

  std::set<std::pair<int, int>> seen;
  for (const json& entry : doc["tensors"]) {
    if (!entry.is_object()) throw SchemaError("tensor entries must be objects");
    const int k = require_int(entry, "k");
    const int q = require_int(entry, "q");
    const std::complex<double> value(optional_number(entry, "re", 0.0), optional_number(entry, "im", 0.0));
    if (k < 0 || k > spin.twice() || q < -k || q > k) {
      throw SchemaError("tensor (" + std::to_string(k) + "," + std::to_string(q) + ") out of range for s = " +
                        spin.str());
    }
    if (!seen.insert({k, q}).second) {
      throw SchemaError("duplicate tensor (" + std::to_string(k) + "," + std::to_string(q) + ")");
    }
    if (k == 0) {
      if (std::abs(value - 1.0) > 1e-12) throw SchemaError("t^0_0 must be 1");
      continue;
    }
    t.set(k, q, value);
  }
  for (auto [k, q] : seen) {
    if (k == 0 || seen.contains({k, -q})) continue;
    const double sign = (q % 2 == 0) ? 1.0 : -1.0;
    t.set(k, -q, sign * std::conj(t.at(k, q)));
  }
  return t;
}

TensorParams parse_state_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw SchemaError(std::string("invalid JSON: ") + e.what());
  }
  return parse_state(doc);
}

TensorParams load_state_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_state_text(buffer.str());
}

json state_to_json(const TensorParams& t) {
  json tensors = json::array();
  for (int k = 1; k <= t.max_rank(); ++k) {
    for (int q = -k; q <= k; ++q) {
      const auto v = t.at(k, q);
      if (v == std::complex<double>(0.0)) continue;
      tensors.push_back({{"k", k}, {"q", q}, {"re", v.real()}, {"im", v.imag()}});
    }
  }
  return {{"spin", t.spin().str()}, {"trace", t.trace()}, {"tensors", tensors}};
}

json report_to_json(const SqueezingReport& report, std::span<const double> phi_grid) {
  json out;
  out["spin"] = report.spin.str();
  out["mean_spin"] = {report.mean_spin.x(), report.mean_spin.y(), report.mean_spin.z()};
  out["sz_half"] = report.sz_half;
  out["squeezed"] = report.squeezed;
  if (!report.reason.empty()) {
    out["reason"] = report.reason;
    return out;
  }
  out["var_x0"] = report.var_x0;
  out["var_y0"] = report.var_y0;
  out["phi_min"] = report.phi_min;
  out["min_axis"] = report.phi_min == 0.0 ? "x0" : "y0";
  out["min_variance"] = report.min_variance;
  out["q_margin"] = report.q_margin;
  out["xi"] = finite_or_null(report.xi);
  if (report.frame) {
    const auto& r = report.frame->rotation;
    out["frame"] = {{"alpha", r.alpha()}, {"beta", r.beta()}, {"gamma", r.gamma()}};
  }
  json samples = json::array();
  for (double phi : phi_grid) samples.push_back({{"phi", phi}, {"variance", report.variance_at(phi)}});
  out["variance_at"] = samples;
  return out;
}

json positivity_to_json(const PositivityReport& report) {
  json out;
  out["psd"] = report.psd;
  out["eigenvalues"] = json::array();
  for (double v : report.eigenvalues) out["eigenvalues"].push_back(v);
  if (!report.spin1_bounds.empty()) {
    json bounds = json::array();
    for (const auto& b : report.spin1_bounds) {
      bounds.push_back(
          {{"condition", b.name}, {"value", b.value}, {"lower", b.lower}, {"upper", b.upper}, {"ok", b.satisfied}});
    }
    out["spin1_bounds"] = bounds;
  }
  return out;
}

}  // namespace spinsq
