#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <vector>

namespace hvci {

using Rational = boost::multiprecision::cpp_rational;

/// Closed interval [lo, hi] with exact rational endpoints.
struct Interval {
  Rational lo;
  Rational hi;
};

/// Finite union of closed intervals, kept sorted and merged.
class IntervalSet {
 public:
  IntervalSet() = default;
  static IntervalSet single(Rational lo, Rational hi);
  /// Exact conversion of double endpoints.
  static IntervalSet from_doubles(double lo, double hi);

  const std::vector<Interval>& intervals() const { return parts_; }
  bool empty() const { return parts_.empty(); }

  IntervalSet united(const IntervalSet& other) const;
  /// Closed delta-neighborhood: every interval grown by delta on both sides.
  IntervalSet neighborhood(const Rational& delta) const;

  bool contains(const IntervalSet& other) const;
  bool contains(const Rational& t) const;
  bool contains(double t) const { return contains(Rational(t)); }

  /// Distance from t to the set (0 inside); +inf for the empty set.
  double distance(double t) const;

  Rational lower() const;
  Rational upper() const;
  std::string to_string() const;

 private:
  void normalize();
  std::vector<Interval> parts_;
};

}  // namespace hvci
