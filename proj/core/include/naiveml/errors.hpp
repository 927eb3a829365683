#pragma once

#include <stdexcept>
#include <string>

namespace naiveml {

// Fit-time failure: a component received data outside its input domain
// (e.g. negative values fed to a Bernoulli model). Pipelines that raise this
// are candidates for repair.
class ComponentIncompatibility : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Fit-time failure: the data carries no usable signal for the component
// (e.g. a rank-zero matrix handed to a projection).
class DegenerateData : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// repair() removed every pre-processor and the predictor-only pipeline still
// does not fit.
class RepairExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed catalog/config content or bad CLI arguments. Maps to exit code 1.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// File-system trouble: missing, unreadable or unwritable paths. Maps to exit
// code 2.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Internal signal used to unwind out of a fit once the per-evaluation
// deadline has passed. evaluate() converts it into a timeout status; it never
// escapes to callers.
class DeadlineExpired : public std::runtime_error {
 public:
  DeadlineExpired() : std::runtime_error("evaluation deadline expired") {}
};

}  // namespace naiveml
