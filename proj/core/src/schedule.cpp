#include "hvci/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace hvci {

AlphaInterval alpha_interval(double theta) {
  if (!(theta < kThetaThreshold)) {
    std::ostringstream os;
    os << "theta = " << theta << " is at or above the threshold 5/4; no admissible alpha exists";
    throw ParamRejected(os.str());
  }
  return {std::max(0.0, 2.0 / 3.0 * (2.0 * theta - 1.0)), 1.0};
}

double choose_alpha(double theta) {
  const AlphaInterval i = alpha_interval(theta);
  return 0.5 * (i.lo + i.hi);
}

PInequalities check_p_inequalities(double alpha, double theta, double p) {
  if (!(p > 1)) throw ParamRejected("Lebesgue exponent must exceed 1");
  const double a = alpha;
  PInequalities out;
  out.slack[0] = -(a + 1) / 2 + (5 * a + 1) / 4 + (2.5 - 3 / p) * a;
  out.slack[1] = (1.5 - 3 / p) * a + std::max(0.0, 2 * theta - 1);
  out.slack[2] = -(5 * a + 1) / 4 + (4.5 - 3 / p) * a;
  out.slack[3] = -(1 - a) / 2 + (3 - 3 / p) * a;
  out.pass = std::all_of(out.slack.begin(), out.slack.end(), [](double s) { return s < 0; });
  return out;
}

double p_correction(double alpha, double p) { return 3 * alpha * (1 - 1 / p); }

double p_upper_limit(double alpha, double theta) {
  // Each slack is its p = 1 value plus p_correction, which increases towards 3 alpha.
  const double a = alpha;
  const std::array<double, 4> at_one{(a - 1) / 4, -1.5 * a + std::max(0.0, 2 * theta - 1), (a - 1) / 4,
                                     (a - 1) / 2};
  double limit = INFINITY;
  for (double s : at_one) {
    if (s >= 0) return 1.0;
    if (3 * a + s > 0) limit = std::min(limit, 3 * a / (3 * a + s));
  }
  return limit;
}

double default_p(double alpha, double theta) {
  const double limit = p_upper_limit(alpha, theta);
  if (!(limit > 1)) throw ParamRejected("no Lebesgue exponent above 1 satisfies the inequalities");
  return std::min(1.0 + 0.5 * (limit - 1.0), 2.0);
}

double delta_sequence(int q, double epsilon0) {
  if (q < 1) throw std::invalid_argument("the geometric delta sequence starts at q = 1");
  return std::ldexp(epsilon0, -q);
}

double Schedule::delta(int q_plus_one) const {
  if (q_plus_one < 1) throw std::out_of_range("delta index starts at 1");
  if (std::size_t(q_plus_one) <= delta_list.size()) return delta_list[q_plus_one - 1];
  return delta_sequence(q_plus_one - 1, epsilon0);
}

Schedule make_schedule(double theta, double nu, double epsilon0, double delta1, std::vector<int> lambda_list,
                       double alpha, double p) {
  Schedule s;
  s.theta = theta;
  s.nu = nu;
  const AlphaInterval range = alpha_interval(theta);
  s.alpha = std::isnan(alpha) ? 0.5 * (range.lo + range.hi) : alpha;
  if (!(s.alpha > range.lo && s.alpha < range.hi)) {
    std::ostringstream os;
    os << "alpha = " << s.alpha << " outside (" << range.lo << ", " << range.hi << ")";
    throw ParamRejected(os.str());
  }
  s.p_exponent = std::isnan(p) ? default_p(s.alpha, theta) : p;
  if (!check_p_inequalities(s.alpha, theta, s.p_exponent).pass)
    throw ParamRejected("Lebesgue exponent violates the p-inequalities");
  s.epsilon0 = epsilon0;
  for (std::size_t i = 1; i < lambda_list.size(); ++i)
    if (lambda_list[i] <= lambda_list[i - 1]) throw ParamRejected("lambda list must be increasing");
  s.lambda_list = std::move(lambda_list);
  s.delta_list.push_back(delta1);
  for (std::size_t q = 1; q < s.lambda_list.size(); ++q) s.delta_list.push_back(delta_sequence(int(q), epsilon0));
  return s;
}

WaveChoice make_wave_params(int lambda, const Schedule& schedule) {
  if (lambda <= 0 || lambda % 5) throw ParamRejected("lambda must be a positive multiple of 5");
  const double a = schedule.alpha;
  WaveChoice out;
  out.r_target = std::pow(double(lambda), a);
  out.sigma_inv_target = std::pow(double(lambda), (a + 1) / 2);
  out.mu_target = std::pow(double(lambda), (5 * a + 1) / 4);

  double best = INFINITY;
  int best_m = 0, best_r = 0;
  for (int m = 2; m <= lambda; ++m) {
    if (lambda % m || (lambda / m) % 5) continue;
    for (int r = 2; 2 * r <= m; ++r) {
      const double cost = std::abs(std::log(r / out.r_target)) + std::abs(std::log(m / out.sigma_inv_target));
      if (cost < best) {
        best = cost;
        best_m = m;
        best_r = r;
      }
    }
  }
  if (!best_m) {
    std::ostringstream os;
    os << "no admissible (sigma, r) for lambda = " << lambda;
    throw ParamRejected(os.str());
  }
  WaveParams& wp = out.params;
  wp.lambda = lambda;
  wp.sigma_inv = best_m;
  wp.r = best_r;
  double mu = std::max(std::ceil(std::pow(double(best_r), 1.5)), std::round(out.mu_target));
  const double l2 = double(lambda) * lambda;
  if (mu <= lambda) mu = lambda + 1;
  if (mu >= l2) mu = l2 - 1;
  if (std::pow(double(best_r), 1.5) > mu) throw ParamRejected("no mu with r^{3/2} <= mu < lambda^2");
  wp.mu = mu;
  wp.alpha = a;
  wp.theta = schedule.theta;
  wp.nu = schedule.nu;
  wp.p_exponent = schedule.p_exponent;
  out.flags = check_wave_params(wp);
  require_admissible(wp);
  return out;
}

}  // namespace hvci
