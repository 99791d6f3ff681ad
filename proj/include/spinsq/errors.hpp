#pragma once

#include <stdexcept>
#include <string>

namespace spinsq {

/// Invalid quantum numbers, malformed inputs, unphysical parameters.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A file that cannot be opened, read or written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A frame construction that has no unique answer for the given state
/// ("LakinFrameUndefined", "NoAlignment").
class FrameUndefined : public std::runtime_error {
 public:
  FrameUndefined(std::string kind, const std::string& detail)
      : std::runtime_error(kind + ": " + detail), kind_(std::move(kind)) {}

  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

}  // namespace spinsq
