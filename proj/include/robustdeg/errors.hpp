#pragma once

#include <stdexcept>
#include <string>

namespace robustdeg {

// Precondition violations on library calls.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Malformed or inconsistent experiment description. `field` names the
// offending config entry when known.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what, std::string field = {})
      : std::runtime_error(what), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

// A rejection sampler ran past its iteration cap.
class ResourceExhausted : public std::runtime_error {
 public:
  ResourceExhausted(const std::string& what, double acceptance_estimate)
      : std::runtime_error(what), acceptance_estimate_(acceptance_estimate) {}
  double acceptance_estimate() const noexcept { return acceptance_estimate_; }

 private:
  double acceptance_estimate_;
};

class Unsupported : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Leading characteristic coefficient vanished after substitution.
class DegenerateSystem : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Step-response thresholds not reached within the simulated horizon.
class HorizonTooShort : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace robustdeg
