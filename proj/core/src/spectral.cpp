#include "hvci/spectral.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>

#include "fft.hpp"

namespace hvci {

int good_fft_size(int n) {
  if (n < 1) return 1;
  for (int m = n;; ++m) {
    int r = m;
    for (int p : {2, 3, 5, 7})
      while (r % p == 0) r /= p;
    if (r == 1) return m;
  }
}

int product_grid(int band_sum) { return good_fft_size(2 * band_sum + 1); }

int fit_grid(int band) {
  int m = good_fft_size(grid_for_band(band));
  while (m % 2) m = good_fft_size(m + 1);
  return m;
}

namespace {

void require_same_grid(int a, int b) {
  if (a != b)
    throw std::invalid_argument("field grids differ: " + std::to_string(a) + " vs " + std::to_string(b));
}

int sample_band_limit(int m) { return m % 2 ? (m - 1) / 2 : m / 2 - 1; }

}  // namespace

ScalarField::ScalarField(int n) : ScalarField(n, max_band(n)) {}

ScalarField::ScalarField(int n, int band) : n_(n), band_(band) {
  if (n < 2 || n % 2) throw std::invalid_argument("grid size must be even and >= 2, got " + std::to_string(n));
  if (band < 0 || band > max_band(n))
    throw BandwidthOverflow("band " + std::to_string(band) + " does not fit grid " + std::to_string(n),
                            grid_for_band(band));
  data_.assign(std::size_t(n) * n * nz(), Complex{});
}

void ScalarField::truncate(int band) {
  if (band >= band_) return;
  const int b = band_;
  for (int kx = -b; kx <= b; ++kx)
    for (int ky = -b; ky <= b; ++ky)
      for (int kz = 0; kz <= b; ++kz)
        if (std::abs(kx) > band || std::abs(ky) > band || kz > band) data_[index(kx, ky, kz)] = 0.0;
  band_ = std::max(band, 0);
}

void ScalarField::widen_band(int band) {
  if (band > max_band(n_))
    throw BandwidthOverflow("band " + std::to_string(band) + " does not fit grid " + std::to_string(n_),
                            grid_for_band(band));
  band_ = std::max(band_, band);
}

Complex ScalarField::coeff(const Wavevector& k) const {
  if (sup_norm(k) > band_) return 0.0;
  if (k[2] >= 0) return data_[index(k[0], k[1], k[2])];
  return std::conj(data_[index(-k[0], -k[1], -k[2])]);
}

void ScalarField::set_coeff(const Wavevector& k, Complex c) {
  const int s = sup_norm(k);
  if (s > max_band(n_))
    throw BandwidthOverflow("mode outside grid " + std::to_string(n_), grid_for_band(s));
  band_ = std::max(band_, s);
  if (k[0] == 0 && k[1] == 0 && k[2] == 0) {
    data_[0] = c.real();
  } else if (k[2] > 0) {
    data_[index(k[0], k[1], k[2])] = c;
  } else if (k[2] < 0) {
    data_[index(-k[0], -k[1], -k[2])] = std::conj(c);
  } else {
    data_[index(k[0], k[1], 0)] = c;
    data_[index(-k[0], -k[1], 0)] = std::conj(c);
  }
}

void ScalarField::accumulate_symmetric(const Wavevector& k, Complex c) {
  if (k[2] < 0) return;
  const int s = sup_norm(k);
  if (s > max_band(n_))
    throw BandwidthOverflow("mode outside grid " + std::to_string(n_), grid_for_band(s));
  band_ = std::max(band_, s);
  data_[index(k[0], k[1], k[2])] += c;
}

void ScalarField::enforce_hermitian() {
  if (!n_) return;
  const int b = band_;
  for (int kx = 0; kx <= b; ++kx)
    for (int ky = -b; ky <= b; ++ky) {
      if (kx == 0 && ky < 0) continue;
      Complex& p = data_[index(kx, ky, 0)];
      if (kx == 0 && ky == 0) {
        p = p.real();
        continue;
      }
      Complex& q = data_[index(-kx, -ky, 0)];
      const Complex avg = 0.5 * (p + std::conj(q));
      p = avg;
      q = std::conj(avg);
    }
}

ScalarField ScalarField::resized(int n) const {
  if (n == n_) return *this;
  if (band_ > max_band(n))
    throw BandwidthOverflow("band " + std::to_string(band_) + " does not fit grid " + std::to_string(n),
                            grid_for_band(band_));
  ScalarField out(n, band_);
  const int b = band_;
  for (int kx = -b; kx <= b; ++kx)
    for (int ky = -b; ky <= b; ++ky)
      for (int kz = 0; kz <= b; ++kz) out.data_[out.index(kx, ky, kz)] = data_[index(kx, ky, kz)];
  return out;
}

AlignedVector<double> ScalarField::to_physical(int m) const {
  if (m == 0) m = n_;
  AlignedVector<double> out(std::size_t(m) * m * m);
  to_physical(m, out);
  return out;
}

void ScalarField::to_physical(int m, std::span<double> out) const {
  if (m == 0) m = n_;
  if (2 * band_ + 1 > m)
    throw BandwidthOverflow("sampling grid " + std::to_string(m) + " too coarse for band " + std::to_string(band_),
                            2 * band_ + 1);
  if (out.size() != std::size_t(m) * m * m) throw std::invalid_argument("physical buffer has wrong size");
  const int mz = m / 2 + 1;
  AlignedVector<Complex> spec(std::size_t(m) * m * mz, Complex{});
  const int b = band_;
  for (int kx = -b; kx <= b; ++kx)
    for (int ky = -b; ky <= b; ++ky) {
      const int ix = kx < 0 ? kx + m : kx;
      const int iy = ky < 0 ? ky + m : ky;
      const std::size_t dst = (std::size_t(ix) * m + iy) * mz;
      const std::size_t src = index(kx, ky, 0);
      std::copy_n(data_.begin() + src, b + 1, spec.begin() + dst);
    }
  detail::fft_inverse(m, spec.data(), out.data());
}

ScalarField ScalarField::from_physical(std::span<const double> samples, int m, int n, int band) {
  if (samples.size() != std::size_t(m) * m * m) throw std::invalid_argument("sample count does not match grid");
  const int limit = std::min(sample_band_limit(m), max_band(n));
  const int b = band < 0 ? limit : std::min(band, limit);
  const int mz = m / 2 + 1;
  AlignedVector<Complex> spec(std::size_t(m) * m * mz);
  detail::fft_forward(m, samples.data(), spec.data());
  const double scale = 1.0 / (double(m) * m * m);
  ScalarField out(n, b);
  for (int kx = -b; kx <= b; ++kx)
    for (int ky = -b; ky <= b; ++ky) {
      const int ix = kx < 0 ? kx + m : kx;
      const int iy = ky < 0 ? ky + m : ky;
      const std::size_t src = (std::size_t(ix) * m + iy) * mz;
      const std::size_t dst = out.index(kx, ky, 0);
      for (int kz = 0; kz <= b; ++kz) out.data_[dst + kz] = spec[src + kz] * scale;
    }
  out.enforce_hermitian();
  return out;
}

ScalarField& ScalarField::operator+=(const ScalarField& o) { return axpy(1.0, o); }
ScalarField& ScalarField::operator-=(const ScalarField& o) { return axpy(-1.0, o); }

ScalarField& ScalarField::operator*=(double s) {
  for (auto& c : data_) c *= s;
  return *this;
}

ScalarField& ScalarField::axpy(double s, const ScalarField& o) {
  if (o.empty()) return *this;
  if (empty()) {
    *this = o;
    return *this *= s;
  }
  require_same_grid(n_, o.n_);
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += s * o.data_[i];
  band_ = std::max(band_, o.band_);
  return *this;
}

ScalarField operator+(ScalarField a, const ScalarField& b) { return a += b; }
ScalarField operator-(ScalarField a, const ScalarField& b) { return a -= b; }
ScalarField operator*(double s, ScalarField a) { return a *= s; }
ScalarField operator-(ScalarField a) { return a *= -1.0; }

VectorField VectorField::resized(int n) const { return {c[0].resized(n), c[1].resized(n), c[2].resized(n)}; }

void VectorField::truncate(int band) {
  for (auto& f : c) f.truncate(band);
}

VectorField& VectorField::operator+=(const VectorField& o) { return axpy(1.0, o); }
VectorField& VectorField::operator-=(const VectorField& o) { return axpy(-1.0, o); }

VectorField& VectorField::operator*=(double s) {
  for (auto& f : c) f *= s;
  return *this;
}

VectorField& VectorField::axpy(double s, const VectorField& o) {
  for (int i = 0; i < 3; ++i) c[i].axpy(s, o.c[i]);
  return *this;
}

VectorField operator+(VectorField a, const VectorField& b) { return a += b; }
VectorField operator-(VectorField a, const VectorField& b) { return a -= b; }
VectorField operator*(double s, VectorField a) { return a *= s; }

SymTensorField::SymTensorField(int n) {
  for (auto& f : c) f = ScalarField(n);
}

int SymTensorField::band() const {
  int b = 0;
  for (const auto& f : c) b = std::max(b, f.band());
  return b;
}

SymTensorField SymTensorField::resized(int n) const {
  SymTensorField out;
  for (int s = 0; s < 6; ++s) out.c[s] = c[s].resized(n);
  return out;
}

SymTensorField& SymTensorField::operator+=(const SymTensorField& o) { return axpy(1.0, o); }
SymTensorField& SymTensorField::operator-=(const SymTensorField& o) { return axpy(-1.0, o); }

SymTensorField& SymTensorField::operator*=(double s) {
  for (auto& f : c) f *= s;
  return *this;
}

SymTensorField& SymTensorField::axpy(double s, const SymTensorField& o) {
  for (int i = 0; i < 6; ++i) c[i].axpy(s, o.c[i]);
  return *this;
}

SymTensorField& SymTensorField::add_identity(const ScalarField& s) {
  c[0] += s;
  c[3] += s;
  c[5] += s;
  return *this;
}

SymTensorField operator+(SymTensorField a, const SymTensorField& b) { return a += b; }
SymTensorField operator-(SymTensorField a, const SymTensorField& b) { return a -= b; }

// ---- multipliers ---------------------------------------------------------------------

namespace {

double norm2(const Wavevector& k) { return double(k[0]) * k[0] + double(k[1]) * k[1] + double(k[2]) * k[2]; }

template <class F>
ScalarField mapped(const ScalarField& f, F&& m) {
  ScalarField g = f;
  g.apply(m);
  return g;
}

template <class F>
VectorField mapped(const VectorField& f, F&& m) {
  return {mapped(f[0], m), mapped(f[1], m), mapped(f[2], m)};
}

/// Visits every half-spectrum index shared by the three components of a vector field.
template <class F>
void for_each_vector_mode(int n, int band, F&& f) {
  const int nz = n / 2 + 1;
  for (int kx = -band; kx <= band; ++kx)
    for (int ky = -band; ky <= band; ++ky) {
      const int ix = kx < 0 ? kx + n : kx;
      const int iy = ky < 0 ? ky + n : ky;
      const std::size_t base = (std::size_t(ix) * n + iy) * nz;
      for (int kz = 0; kz <= band; ++kz) f(Wavevector{kx, ky, kz}, base + kz);
    }
}

VectorField aligned_copy(const VectorField& f) {
  const int b = f.band();
  VectorField out = f;
  for (auto& c : out.c) c.widen_band(b);
  return out;
}

}  // namespace

ScalarField fractional_laplacian(const ScalarField& f, double theta) {
  return mapped(f, [theta](const Wavevector& k, Complex c) -> Complex {
    const double kk = norm2(k);
    return kk == 0 ? Complex{} : c * std::pow(kk, theta);
  });
}

VectorField fractional_laplacian(const VectorField& f, double theta) {
  return {fractional_laplacian(f[0], theta), fractional_laplacian(f[1], theta), fractional_laplacian(f[2], theta)};
}

ScalarField riesz_power(const ScalarField& f, double s) { return fractional_laplacian(f, 0.5 * s); }

VectorField riesz_power(const VectorField& f, double s) { return fractional_laplacian(f, 0.5 * s); }

ScalarField inverse_laplacian(const ScalarField& f) {
  return mapped(f, [](const Wavevector& k, Complex c) -> Complex {
    const double kk = norm2(k);
    return kk == 0 ? Complex{} : -c / kk;
  });
}

ScalarField fourier_project(const ScalarField& f, double lo, double hi) {
  const double lo2 = lo * lo;
  const double hi2 = std::isinf(hi) ? std::numeric_limits<double>::infinity() : hi * hi;
  return mapped(f, [=](const Wavevector& k, Complex c) -> Complex {
    const double kk = norm2(k);
    return (kk >= lo2 && kk < hi2) ? c : Complex{};
  });
}

VectorField fourier_project(const VectorField& f, double lo, double hi) {
  return {fourier_project(f[0], lo, hi), fourier_project(f[1], lo, hi), fourier_project(f[2], lo, hi)};
}

ScalarField remove_mean(ScalarField f) {
  if (!f.empty()) f.data()[0] = 0.0;
  return f;
}

VectorField remove_mean(VectorField f) {
  for (auto& c : f.c) c = remove_mean(std::move(c));
  return f;
}

VectorField leray_project(const VectorField& f) {
  VectorField out = aligned_copy(f);
  auto d0 = out[0].data(), d1 = out[1].data(), d2 = out[2].data();
  for_each_vector_mode(f.n(), out.band(), [&](const Wavevector& k, std::size_t i) {
    const double kk = norm2(k);
    if (kk == 0) return;
    const Complex kc = (double(k[0]) * d0[i] + double(k[1]) * d1[i] + double(k[2]) * d2[i]) / kk;
    d0[i] -= double(k[0]) * kc;
    d1[i] -= double(k[1]) * kc;
    d2[i] -= double(k[2]) * kc;
  });
  for (auto& c : out.c) c.enforce_hermitian();
  return out;
}

ScalarField partial(const ScalarField& f, int axis) {
  return mapped(f, [axis](const Wavevector& k, Complex c) { return Complex(0.0, k[axis]) * c; });
}

VectorField gradient(const ScalarField& f) { return {partial(f, 0), partial(f, 1), partial(f, 2)}; }

ScalarField divergence(const VectorField& f) {
  VectorField a = aligned_copy(f);
  ScalarField out(f.n(), a.band());
  auto o = out.data();
  auto d0 = a[0].data(), d1 = a[1].data(), d2 = a[2].data();
  for_each_vector_mode(f.n(), a.band(), [&](const Wavevector& k, std::size_t i) {
    o[i] = Complex(0.0, 1.0) * (double(k[0]) * d0[i] + double(k[1]) * d1[i] + double(k[2]) * d2[i]);
  });
  out.enforce_hermitian();
  return out;
}

VectorField divergence(const SymTensorField& t) {
  VectorField out;
  for (int i = 0; i < 3; ++i) {
    ScalarField acc = partial(t(i, 0), 0);
    acc += partial(t(i, 1), 1);
    acc += partial(t(i, 2), 2);
    out[i] = std::move(acc);
  }
  return out;
}

VectorField curl(const VectorField& f) {
  VectorField out = {partial(f[2], 1) - partial(f[1], 2), partial(f[0], 2) - partial(f[2], 0),
                     partial(f[1], 0) - partial(f[0], 1)};
  return out;
}

// ---- norms ---------------------------------------------------------------------------

namespace {

double pnorm_of_magnitudes(std::span<const double> squared_magnitude, double p) {
  if (p < 1) throw std::invalid_argument("Lebesgue exponent must be >= 1");
  if (std::isinf(p)) {
    double mx = 0.0;
    for (double v : squared_magnitude) mx = std::max(mx, v);
    return std::sqrt(mx);
  }
  long double acc = 0.0L;
  const double half = 0.5 * p;
  for (double v : squared_magnitude) acc += std::pow(v, half);
  return std::pow(double(acc / squared_magnitude.size()), 1.0 / p);
}

template <std::size_t K>
AlignedVector<double> squared_magnitude(const std::array<ScalarField, K>& comps, const std::array<double, K>& weights,
                                        int m) {
  if (m == 0) m = comps[0].n();
  AlignedVector<double> acc(std::size_t(m) * m * m, 0.0);
  AlignedVector<double> buf(acc.size());
  for (std::size_t s = 0; s < K; ++s) {
    if (comps[s].empty()) continue;
    comps[s].to_physical(m, buf);
    const double w = weights[s];
    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += w * buf[i] * buf[i];
  }
  return acc;
}

std::vector<double> pnorms(std::span<const double> sq, std::span<const double> ps) {
  std::vector<double> out;
  for (double p : ps) out.push_back(pnorm_of_magnitudes(sq, p));
  return out;
}

constexpr std::array<double, 6> kTensorWeights{1.0, 2.0, 2.0, 1.0, 2.0, 1.0};

}  // namespace

double lebesgue_norm(const ScalarField& f, double p, int m) {
  return pnorm_of_magnitudes(squared_magnitude<1>({f}, {1.0}, m), p);
}

double lebesgue_norm(const VectorField& f, double p, int m) {
  return pnorm_of_magnitudes(squared_magnitude<3>(f.c, {1.0, 1.0, 1.0}, m), p);
}

std::vector<double> lebesgue_norms(const ScalarField& f, std::span<const double> ps, int m) {
  return pnorms(squared_magnitude<1>({f}, {1.0}, m), ps);
}

std::vector<double> lebesgue_norms(const VectorField& f, std::span<const double> ps, int m) {
  return pnorms(squared_magnitude<3>(f.c, {1.0, 1.0, 1.0}, m), ps);
}

std::vector<double> lebesgue_norms(const SymTensorField& f, std::span<const double> ps, int m) {
  return pnorms(squared_magnitude<6>(f.c, kTensorWeights, m), ps);
}

double gradient_lebesgue_norm(const VectorField& f, double p, int m) {
  if (m == 0) m = f.n();
  AlignedVector<double> acc(std::size_t(m) * m * m, 0.0);
  for (int j = 0; j < 3; ++j) {
    std::array<ScalarField, 3> d{partial(f[0], j), partial(f[1], j), partial(f[2], j)};
    const auto sq = squared_magnitude<3>(d, {1.0, 1.0, 1.0}, m);
    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += sq[i];
  }
  return pnorm_of_magnitudes(acc, p);
}

double lebesgue_norm(const SymTensorField& f, double p, int m) {
  return pnorm_of_magnitudes(squared_magnitude<6>(f.c, kTensorWeights, m), p);
}

namespace {
void require_zero_mean_for_negative(double s, double mean, double scale) {
  if (s < 0 && std::abs(mean) > 1e-14 * std::max(1.0, scale))
    throw std::invalid_argument("negative-order Sobolev norm needs a zero-mean field");
}
}  // namespace

double sobolev_norm(const ScalarField& f, double s, double p, int m) {
  require_zero_mean_for_negative(s, f.mean(), max_coeff(f));
  return lebesgue_norm(f, p, m) + lebesgue_norm(riesz_power(f, s), p, m);
}

double sobolev_norm(const VectorField& f, double s, double p, int m) {
  for (const auto& c : f.c) require_zero_mean_for_negative(s, c.mean(), max_coeff(c));
  return lebesgue_norm(f, p, m) + lebesgue_norm(riesz_power(f, s), p, m);
}

double l2_norm(const ScalarField& f) {
  if (f.empty()) return 0.0;
  long double acc = 0.0L;
  f.for_each_mode([&](const Wavevector& k, Complex c) { acc += (k[2] > 0 ? 2.0 : 1.0) * std::norm(c); });
  return std::sqrt(double(acc));
}

double l2_norm(const VectorField& f) {
  double a = 0.0;
  for (const auto& c : f.c) a += std::pow(l2_norm(c), 2);
  return std::sqrt(a);
}

double l2_norm(const SymTensorField& f) {
  double a = 0.0;
  for (int s = 0; s < 6; ++s) {
    const auto [i, j] = SymTensorField::pairs[s];
    a += (i == j ? 1.0 : 2.0) * std::pow(l2_norm(f.c[s]), 2);
  }
  return std::sqrt(a);
}

double max_coeff(const ScalarField& f) {
  double mx = 0.0;
  for (Complex c : f.data()) mx = std::max(mx, std::abs(c));
  return mx;
}

double max_coeff(const VectorField& f) {
  return std::max({max_coeff(f[0]), max_coeff(f[1]), max_coeff(f[2])});
}

double max_coeff(const SymTensorField& f) {
  double mx = 0.0;
  for (const auto& c : f.c) mx = std::max(mx, max_coeff(c));
  return mx;
}

// ---- products ------------------------------------------------------------------------

ProductGrid::ProductGrid(int band_sum, int out_n) : band_(band_sum), out_n_(out_n), m_(product_grid(band_sum)) {
  if (band_sum > max_band(out_n))
    throw BandwidthOverflow("product band " + std::to_string(band_sum) + " exceeds grid " + std::to_string(out_n),
                            grid_for_band(band_sum));
}

AlignedVector<double> ProductGrid::physical(const ScalarField& f) const { return f.to_physical(m_); }

ScalarField ProductGrid::spectral(std::span<const double> values) const {
  return ScalarField::from_physical(values, m_, out_n_, band_);
}

namespace {
int pick_grid(int out_n, int a, int b) { return out_n ? out_n : std::max(a, b); }
}  // namespace

ScalarField multiply_dealiased(const ScalarField& f, const ScalarField& g, int out_n) {
  ProductGrid grid(f.band() + g.band(), pick_grid(out_n, f.n(), g.n()));
  auto a = grid.physical(f);
  const auto b = grid.physical(g);
  for (std::size_t i = 0; i < a.size(); ++i) a[i] *= b[i];
  return grid.spectral(a);
}

VectorField multiply_dealiased(const ScalarField& f, const VectorField& g, int out_n) {
  ProductGrid grid(f.band() + g.band(), pick_grid(out_n, f.n(), g.n()));
  const auto a = grid.physical(f);
  VectorField out;
  for (int i = 0; i < 3; ++i) {
    auto b = grid.physical(g[i]);
    for (std::size_t j = 0; j < b.size(); ++j) b[j] *= a[j];
    out[i] = grid.spectral(b);
  }
  return out;
}

ScalarField dot_dealiased(const VectorField& f, const VectorField& g, int out_n) {
  ProductGrid grid(f.band() + g.band(), pick_grid(out_n, f.n(), g.n()));
  AlignedVector<double> acc(grid.size(), 0.0);
  for (int i = 0; i < 3; ++i) {
    const auto a = grid.physical(f[i]);
    const auto b = grid.physical(g[i]);
    for (std::size_t j = 0; j < acc.size(); ++j) acc[j] += a[j] * b[j];
  }
  return grid.spectral(acc);
}

SymTensorField symmetric_product(const VectorField& f, const VectorField& g, int out_n) {
  ProductGrid grid(f.band() + g.band(), pick_grid(out_n, f.n(), g.n()));
  std::array<AlignedVector<double>, 3> a, b;
  for (int i = 0; i < 3; ++i) {
    a[i] = grid.physical(f[i]);
    b[i] = grid.physical(g[i]);
  }
  SymTensorField out;
  AlignedVector<double> buf(grid.size());
  for (int s = 0; s < 6; ++s) {
    const auto [i, j] = SymTensorField::pairs[s];
    for (std::size_t q = 0; q < buf.size(); ++q) buf[q] = a[i][q] * b[j][q] + b[i][q] * a[j][q];
    out.c[s] = grid.spectral(buf);
  }
  return out;
}

SymTensorField outer_square(const VectorField& f, int out_n) {
  ProductGrid grid(2 * f.band(), pick_grid(out_n, f.n(), f.n()));
  std::array<AlignedVector<double>, 3> a;
  for (int i = 0; i < 3; ++i) a[i] = grid.physical(f[i]);
  SymTensorField out;
  AlignedVector<double> buf(grid.size());
  for (int s = 0; s < 6; ++s) {
    const auto [i, j] = SymTensorField::pairs[s];
    for (std::size_t q = 0; q < buf.size(); ++q) buf[q] = a[i][q] * a[j][q];
    out.c[s] = grid.spectral(buf);
  }
  return out;
}

ScalarField modulate(const ScalarField& f, const Wavevector& k0, Complex c, int out_n) {
  const int b = f.band() + sup_norm(k0);
  if (b > max_band(out_n))
    throw BandwidthOverflow("modulated band " + std::to_string(b) + " exceeds grid " + std::to_string(out_n),
                            grid_for_band(b));
  ScalarField out(out_n, b);
  auto d = out.data();
  const Complex cc = std::conj(c);
  for (int kx = -b; kx <= b; ++kx)
    for (int ky = -b; ky <= b; ++ky)
      for (int kz = 0; kz <= b; ++kz) {
        const Wavevector lo{kx - k0[0], ky - k0[1], kz - k0[2]};
        const Wavevector hi{kx + k0[0], ky + k0[1], kz + k0[2]};
        d[out.index(kx, ky, kz)] = c * f.coeff(lo) + cc * f.coeff(hi);
      }
  out.enforce_hermitian();
  return out;
}

}  // namespace hvci
