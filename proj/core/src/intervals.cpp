#include "hvci/intervals.hpp"

#include <algorithm>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace hvci {

IntervalSet IntervalSet::single(Rational lo, Rational hi) {
  if (hi < lo) throw std::invalid_argument("interval with hi < lo");
  IntervalSet s;
  s.parts_.push_back({std::move(lo), std::move(hi)});
  return s;
}

IntervalSet IntervalSet::from_doubles(double lo, double hi) { return single(Rational(lo), Rational(hi)); }

void IntervalSet::normalize() {
  std::sort(parts_.begin(), parts_.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  std::vector<Interval> merged;
  for (auto& p : parts_) {
    if (!merged.empty() && p.lo <= merged.back().hi) {
      if (p.hi > merged.back().hi) merged.back().hi = p.hi;
    } else {
      merged.push_back(p);
    }
  }
  parts_ = std::move(merged);
}

IntervalSet IntervalSet::united(const IntervalSet& other) const {
  IntervalSet s = *this;
  s.parts_.insert(s.parts_.end(), other.parts_.begin(), other.parts_.end());
  s.normalize();
  return s;
}

IntervalSet IntervalSet::neighborhood(const Rational& delta) const {
  if (delta < 0) throw std::invalid_argument("negative neighborhood radius");
  IntervalSet s = *this;
  for (auto& p : s.parts_) {
    p.lo -= delta;
    p.hi += delta;
  }
  s.normalize();
  return s;
}

bool IntervalSet::contains(const Rational& t) const {
  return std::any_of(parts_.begin(), parts_.end(), [&](const Interval& p) { return p.lo <= t && t <= p.hi; });
}

bool IntervalSet::contains(const IntervalSet& other) const {
  return std::all_of(other.parts_.begin(), other.parts_.end(), [&](const Interval& q) {
    return std::any_of(parts_.begin(), parts_.end(), [&](const Interval& p) { return p.lo <= q.lo && q.hi <= p.hi; });
  });
}

double IntervalSet::distance(double t) const {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& p : parts_) {
    const double lo = p.lo.convert_to<double>();
    const double hi = p.hi.convert_to<double>();
    const double d = t < lo ? lo - t : (t > hi ? t - hi : 0.0);
    best = std::min(best, d);
  }
  return best;
}

Rational IntervalSet::lower() const {
  if (parts_.empty()) throw std::logic_error("empty interval set has no bounds");
  return parts_.front().lo;
}

Rational IntervalSet::upper() const {
  if (parts_.empty()) throw std::logic_error("empty interval set has no bounds");
  return parts_.back().hi;
}

std::string IntervalSet::to_string() const {
  if (parts_.empty()) return "{}";
  std::ostringstream os;
  os.precision(17);
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (i) os << " U ";
    os << '[' << parts_[i].lo.convert_to<double>() << ", " << parts_[i].hi.convert_to<double>() << ']';
  }
  return os.str();
}

}  // namespace hvci
