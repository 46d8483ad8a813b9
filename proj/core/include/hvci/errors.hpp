#pragma once

#include <stdexcept>
#include <string>

namespace hvci {

/// Parameters violate an admissibility condition that the construction needs to be exact.
class ParamRejected : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A matrix left the ball where all geometric coefficients stay positive.
class OutsideBall : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A product or embedding needs more Fourier modes than the target grid holds.
class BandwidthOverflow : public std::length_error {
 public:
  BandwidthOverflow(const std::string& what, int required_grid)
      : std::length_error(what + " (needs grid >= " + std::to_string(required_grid) + ")"),
        required_grid_(required_grid) {}
  int required_grid() const noexcept { return required_grid_; }

 private:
  int required_grid_;
};

class SingularSystem : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Configuration file could not be parsed or fails the schema.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A hard certificate (exact identity or support inclusion) failed.
class CertificateFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace hvci
