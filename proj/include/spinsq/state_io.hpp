#pragma once

#include <filesystem>
#include <json.hpp>
#include <span>
#include <string>

#include "spinsq/density.hpp"
#include "spinsq/errors.hpp"
#include "spinsq/squeezing.hpp"

namespace spinsq {

/// Malformed state file.
class SchemaError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Parses the state schema
///
///   {"spin": "1" | "3/2" | 1.5, "trace": 1.0,
///    "tensors": [{"k": 2, "q": 0, "re": 0.5, "im": 0.0}, ...]}
///
/// Omitted (k, q) are zero. When only one of t^k_q, t^k_{-q} is listed the
/// other is filled from the Hermitian pairing. "trace" defaults to 1.
TensorParams parse_state(const nlohmann::json& doc);
TensorParams parse_state_text(const std::string& text);
/// Throws IoError when the file cannot be read.
TensorParams load_state_file(const std::filesystem::path& path);

nlohmann::json state_to_json(const TensorParams& t);

/// Report with the transverse variance sampled at each phi in phi_grid.
nlohmann::json report_to_json(const SqueezingReport& report, std::span<const double> phi_grid);

nlohmann::json positivity_to_json(const PositivityReport& report);

}  // namespace spinsq
