#include "hvci/anti_divergence.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace hvci {

std::array<Complex, 6> anti_divergence_mode(const Wavevector& k, const CVec3& u) {
  const double kk = double(k[0]) * k[0] + double(k[1]) * k[1] + double(k[2]) * k[2];
  std::array<Complex, 6> out{};
  if (kk == 0) return out;
  const Complex I(0.0, 1.0);
  // v solves Delta v = u; Pv is its divergence-free part.
  CVec3 v, pv;
  for (int i = 0; i < 3; ++i) v[i] = -u[i] / kk;
  const Complex kv = double(k[0]) * v[0] + double(k[1]) * v[1] + double(k[2]) * v[2];
  for (int i = 0; i < 3; ++i) pv[i] = v[i] - double(k[i]) * kv / kk;
  for (int s = 0; s < 6; ++s) {
    const auto [i, j] = SymTensorField::pairs[s];
    Complex val = 0.25 * I * (double(k[i]) * pv[j] + double(k[j]) * pv[i]) +
                  0.75 * I * (double(k[i]) * v[j] + double(k[j]) * v[i]);
    if (i == j) val -= 0.5 * I * kv;
    out[s] = val;
  }
  return out;
}

AntiDivResult anti_divergence(const VectorField& u) {
  const int n = u.n();
  const int b = u.band();
  AntiDivResult out;
  out.mean_removed = u.mean();
  for (auto& c : out.tensor.c) c = ScalarField(n, b);
  std::array<std::span<Complex>, 6> t;
  for (int s = 0; s < 6; ++s) t[s] = out.tensor.c[s].data();
  for (int kx = -b; kx <= b; ++kx)
    for (int ky = -b; ky <= b; ++ky)
      for (int kz = 0; kz <= b; ++kz) {
        const Wavevector k{kx, ky, kz};
        const std::size_t idx = out.tensor.c[0].index(kx, ky, kz);
        const auto m = anti_divergence_mode(k, {u[0].coeff(k), u[1].coeff(k), u[2].coeff(k)});
        for (int s = 0; s < 6; ++s) t[s][idx] = m[s];
      }
  for (auto& c : out.tensor.c) c.enforce_hermitian();
  return out;
}

SymTensorField anti_div(const VectorField& u) { return anti_divergence(u).tensor; }

double commutator_left_side(const ScalarField& a, const ScalarField& f, double k, double p) {
  const ScalarField high = fourier_project(f, k, INFINITY);
  const int n = std::max(f.n(), grid_for_band(a.band() + f.band()));
  const ScalarField prod = remove_mean(multiply_dealiased(a, high, n));
  return lebesgue_norm(riesz_power(prod, -1.0), p);
}

double hessian_sup(const ScalarField& a, int m) {
  if (m == 0) m = std::max(a.n(), 4 * a.band() + 2);
  AlignedVector<double> acc(std::size_t(m) * m * m, 0.0);
  for (int s = 0; s < 6; ++s) {
    const auto [i, j] = SymTensorField::pairs[s];
    const auto h = partial(partial(a, i), j).to_physical(m);
    const double w = i == j ? 1.0 : 2.0;
    for (std::size_t q = 0; q < acc.size(); ++q) acc[q] += w * h[q] * h[q];
  }
  return std::sqrt(*std::max_element(acc.begin(), acc.end()));
}

NormReport commutator_decay_probe(const ScalarField& a, const ScalarField& f, std::span<const double> ks, double p,
                                  double slope_tolerance) {
  NormReport report;
  const double hess = hessian_sup(a);
  const double fnorm = lebesgue_norm(f, p);
  report.add_norm("hessian_sup", hess);
  report.add_norm("f_norm", fnorm);
  std::vector<double> xs, ys;
  for (double k : ks) {
    const double left = commutator_left_side(a, f, k, p);
    const double bound = hess * fnorm / k;
    std::ostringstream tag;
    tag << "k=" << k;
    report.add_norm("left." + tag.str(), left);
    report.add_norm("bound." + tag.str(), bound);
    report.add_norm("ratio." + tag.str(), bound > 0 ? left / bound : 0.0);
    xs.push_back(k);
    ys.push_back(left);
  }
  report.add_fit(make_fit("commutator_left_side", "k", xs, ys, -1.0, slope_tolerance));
  return report;
}

}  // namespace hvci
