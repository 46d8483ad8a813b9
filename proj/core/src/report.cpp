#include "hvci/report.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace hvci {

double loglog_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("slope fit needs two or more points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = double(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

ScalingFit make_fit(std::string name, std::string variable, std::vector<double> x, std::vector<double> y,
                    double predicted, double tolerance) {
  ScalingFit f{std::move(name), std::move(variable), std::move(x), std::move(y), 0.0, predicted, tolerance, false};
  f.slope = loglog_slope(f.x, f.y);
  f.pass = std::isfinite(f.slope) && std::abs(f.slope - predicted) <= tolerance;
  return f;
}

void NormReport::add_norm(std::string name, double value, std::string note) {
  norms_.push_back({std::move(name), value, std::move(note)});
}

const Certificate& NormReport::add_certificate(std::string name, double value, double tolerance, bool hard) {
  const bool pass = std::isfinite(value) && value <= tolerance;
  certificates_.push_back({std::move(name), value, tolerance, pass, hard});
  return certificates_.back();
}

void NormReport::add_fit(ScalingFit fit) { fits_.push_back(std::move(fit)); }

void NormReport::merge(const NormReport& other, const std::string& prefix) {
  for (auto n : other.norms_) {
    n.name = prefix + n.name;
    norms_.push_back(std::move(n));
  }
  for (auto c : other.certificates_) {
    c.name = prefix + c.name;
    certificates_.push_back(std::move(c));
  }
  for (auto f : other.fits_) {
    f.name = prefix + f.name;
    fits_.push_back(std::move(f));
  }
}

bool NormReport::hard_certificates_pass() const {
  for (const auto& c : certificates_)
    if (c.hard && !c.pass) return false;
  return true;
}

double NormReport::norm(const std::string& name) const {
  for (const auto& n : norms_)
    if (n.name == name) return n.value;
  throw std::out_of_range("no norm named " + name);
}

const Certificate& NormReport::certificate(const std::string& name) const {
  for (const auto& c : certificates_)
    if (c.name == name) return c;
  throw std::out_of_range("no certificate named " + name);
}

namespace {
nlohmann::json number(double v) {
  if (std::isfinite(v)) return v;
  return std::isnan(v) ? nlohmann::json("nan") : nlohmann::json(v > 0 ? "inf" : "-inf");
}
}  // namespace

std::string NormReport::to_json() const {
  nlohmann::json j;
  j["norms"] = nlohmann::json::array();
  for (const auto& n : norms_) {
    nlohmann::json e{{"name", n.name}, {"value", number(n.value)}};
    if (!n.note.empty()) e["note"] = n.note;
    j["norms"].push_back(e);
  }
  j["certificates"] = nlohmann::json::array();
  for (const auto& c : certificates_)
    j["certificates"].push_back({{"name", c.name},
                                 {"value", number(c.value)},
                                 {"tolerance", number(c.tolerance)},
                                 {"pass", c.pass},
                                 {"hard", c.hard}});
  j["fits"] = nlohmann::json::array();
  for (const auto& f : fits_) {
    nlohmann::json xs = nlohmann::json::array(), ys = nlohmann::json::array();
    for (double v : f.x) xs.push_back(number(v));
    for (double v : f.y) ys.push_back(number(v));
    j["fits"].push_back({{"name", f.name},
                         {"variable", f.variable},
                         {"x", xs},
                         {"y", ys},
                         {"slope", number(f.slope)},
                         {"predicted", number(f.predicted)},
                         {"tolerance", number(f.tolerance)},
                         {"pass", f.pass}});
  }
  j["hard_certificates_pass"] = hard_certificates_pass();
  return j.dump(2);
}

std::string NormReport::to_csv() const {
  std::ostringstream os;
  os.precision(17);
  os << "kind,name,value,tolerance_or_predicted,pass\n";
  for (const auto& n : norms_) os << "norm," << n.name << ',' << n.value << ",,\n";
  for (const auto& c : certificates_)
    os << "certificate," << c.name << ',' << c.value << ',' << c.tolerance << ',' << (c.pass ? "true" : "false")
       << '\n';
  for (const auto& f : fits_)
    os << "fit," << f.name << ',' << f.slope << ',' << f.predicted << ',' << (f.pass ? "true" : "false") << '\n';
  return os.str();
}

void NormReport::write(const std::filesystem::path& dir, const std::string& stem) const {
  std::filesystem::create_directories(dir);
  std::ofstream(dir / (stem + ".json")) << to_json() << '\n';
  std::ofstream(dir / (stem + ".csv")) << to_csv();
}

}  // namespace hvci
