#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace hvci {

struct NormEntry {
  std::string name;
  double value = 0.0;
  std::string note;
};

/// Pass/fail check: `value <= tolerance`. Hard certificates decide the exit status.
struct Certificate {
  std::string name;
  double value = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  bool hard = true;
};

/// Least-squares log-log slope of y against x, compared with a predicted exponent.
struct ScalingFit {
  std::string name;
  std::string variable;
  std::vector<double> x;
  std::vector<double> y;
  double slope = 0.0;
  double predicted = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

/// Least-squares slope of log y against log x.
double loglog_slope(std::span<const double> x, std::span<const double> y);

/// Fits the slope and marks the fit as passing when |slope - predicted| <= tolerance.
ScalingFit make_fit(std::string name, std::string variable, std::vector<double> x, std::vector<double> y,
                    double predicted, double tolerance);

/// Structured record of measured norms, certificates and scaling fits.
class NormReport {
 public:
  void add_norm(std::string name, double value, std::string note = {});
  const Certificate& add_certificate(std::string name, double value, double tolerance, bool hard = true);
  void add_fit(ScalingFit fit);
  void merge(const NormReport& other, const std::string& prefix = {});

  bool hard_certificates_pass() const;
  const std::vector<NormEntry>& norms() const { return norms_; }
  const std::vector<Certificate>& certificates() const { return certificates_; }
  const std::vector<ScalingFit>& fits() const { return fits_; }

  /// Looks up a norm by exact name; throws std::out_of_range when absent.
  double norm(const std::string& name) const;
  const Certificate& certificate(const std::string& name) const;

  std::string to_json() const;
  std::string to_csv() const;
  /// Writes <stem>.json and <stem>.csv under dir.
  void write(const std::filesystem::path& dir, const std::string& stem) const;

 private:
  std::vector<NormEntry> norms_;
  std::vector<Certificate> certificates_;
  std::vector<ScalingFit> fits_;
};

}  // namespace hvci
