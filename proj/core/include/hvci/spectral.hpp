#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "hvci/errors.hpp"

namespace hvci {

using Complex = std::complex<double>;
using Wavevector = std::array<int, 3>;
using Vec3 = std::array<double, 3>;
using CVec3 = std::array<Complex, 3>;

namespace detail {
void* aligned_alloc_bytes(std::size_t bytes);
void aligned_free(void* p) noexcept;
}  // namespace detail

/// Allocator returning SIMD-aligned storage suitable for the FFT backend.
template <class T>
struct AlignedAllocator {
  using value_type = T;
  AlignedAllocator() = default;
  template <class U>
  AlignedAllocator(const AlignedAllocator<U>&) noexcept {}
  T* allocate(std::size_t n) { return static_cast<T*>(detail::aligned_alloc_bytes(n * sizeof(T))); }
  void deallocate(T* p, std::size_t) noexcept { detail::aligned_free(p); }
  template <class U>
  bool operator==(const AlignedAllocator<U>&) const noexcept { return true; }
};

template <class T>
using AlignedVector = std::vector<T, AlignedAllocator<T>>;

/// Smallest integer >= n whose prime factors are all in {2,3,5,7}.
int good_fft_size(int n);

/// Alias-free grid for a pointwise product whose factors have total band `band_sum`.
int product_grid(int band_sum);

/// Largest sup-norm band representable on an even grid of size n (Nyquist plane excluded).
constexpr int max_band(int n) { return n / 2 - 1; }

/// Smallest even grid whose max_band reaches `band`.
constexpr int grid_for_band(int band) { return 2 * band + 2; }

/// Smallest even FFT-friendly grid holding modes up to `band`.
int fit_grid(int band);

inline double norm(const Wavevector& k) {
  return std::sqrt(double(k[0]) * k[0] + double(k[1]) * k[1] + double(k[2]) * k[2]);
}

inline int sup_norm(const Wavevector& k) {
  return std::max({std::abs(k[0]), std::abs(k[1]), std::abs(k[2])});
}

/// Real periodic field on [0,2pi)^3 stored as half-spectrum Fourier coefficients.
///
/// f(x) = sum_k coeff(k) e^{ik.x}; coeff(0) is the normalized mean. The field also carries
/// a sup-norm band: every stored mode satisfies |k_i| <= band().
class ScalarField {
 public:
  ScalarField() = default;
  explicit ScalarField(int n);
  ScalarField(int n, int band);

  int n() const { return n_; }
  int nz() const { return n_ / 2 + 1; }
  int band() const { return band_; }
  bool empty() const { return n_ == 0; }

  /// Zeroes every mode with some |k_i| > band and lowers the band tag.
  void truncate(int band);
  /// Raises the band tag without touching coefficients.
  void widen_band(int band);

  Complex coeff(const Wavevector& k) const;
  /// Sets coeff(k) and, through the real-field symmetry, coeff(-k).
  void set_coeff(const Wavevector& k, Complex c);
  /// Adds one term of a Hermitian-symmetric sum; terms with kz < 0 are implied by their partner.
  void accumulate_symmetric(const Wavevector& k, Complex c);

  double mean() const { return n_ ? data_[0].real() : 0.0; }

  std::span<Complex> data() { return data_; }
  std::span<const Complex> data() const { return data_; }
  std::size_t index(int kx, int ky, int kz) const {
    const int ix = kx < 0 ? kx + n_ : kx;
    const int iy = ky < 0 ? ky + n_ : ky;
    return (std::size_t(ix) * n_ + iy) * nz() + kz;
  }

  /// Applies m(k) to every mode within the band, then restores the real-field symmetry.
  template <class Multiplier>
  void apply(Multiplier&& m);

  /// Calls f(k, coeff) for every stored mode within the band (half spectrum, kz >= 0).
  template <class Visitor>
  void for_each_mode(Visitor&& f) const;

  /// Re-imposes coeff(-k) = conj(coeff(k)) on the kz = 0 plane and clears Nyquist planes.
  void enforce_hermitian();

  /// Same field represented on an n-grid; throws BandwidthOverflow when the band does not fit.
  ScalarField resized(int n) const;

  /// Samples on an m^3 collocation grid (C order, x fastest-varying last); m > 2*band.
  AlignedVector<double> to_physical(int m = 0) const;
  void to_physical(int m, std::span<double> out) const;

  /// Interpolates samples on an m^3 grid (m may be odd) and keeps modes up to `band`.
  static ScalarField from_physical(std::span<const double> samples, int m, int n, int band = -1);

  ScalarField& operator+=(const ScalarField& o);
  ScalarField& operator-=(const ScalarField& o);
  ScalarField& operator*=(double s);
  /// Adds s * o in place.
  ScalarField& axpy(double s, const ScalarField& o);

 private:
  int n_ = 0;
  int band_ = 0;
  AlignedVector<Complex> data_;
};

ScalarField operator+(ScalarField a, const ScalarField& b);
ScalarField operator-(ScalarField a, const ScalarField& b);
ScalarField operator*(double s, ScalarField a);
ScalarField operator-(ScalarField a);

struct VectorField {
  std::array<ScalarField, 3> c;

  VectorField() = default;
  explicit VectorField(int n) : c{ScalarField(n), ScalarField(n), ScalarField(n)} {}
  VectorField(ScalarField x, ScalarField y, ScalarField z) : c{std::move(x), std::move(y), std::move(z)} {}

  ScalarField& operator[](int i) { return c[i]; }
  const ScalarField& operator[](int i) const { return c[i]; }
  int n() const { return c[0].n(); }
  int band() const { return std::max({c[0].band(), c[1].band(), c[2].band()}); }
  Vec3 mean() const { return {c[0].mean(), c[1].mean(), c[2].mean()}; }
  VectorField resized(int n) const;
  void truncate(int band);

  VectorField& operator+=(const VectorField& o);
  VectorField& operator-=(const VectorField& o);
  VectorField& operator*=(double s);
  VectorField& axpy(double s, const VectorField& o);
};

VectorField operator+(VectorField a, const VectorField& b);
VectorField operator-(VectorField a, const VectorField& b);
VectorField operator*(double s, VectorField a);

/// Symmetric 3x3 tensor field; components stored in the order xx, xy, xz, yy, yz, zz.
struct SymTensorField {
  std::array<ScalarField, 6> c;

  SymTensorField() = default;
  explicit SymTensorField(int n);

  static constexpr int slot(int i, int j) {
    if (i > j) std::swap(i, j);
    return i == 0 ? j : (i == 1 ? 2 + j : 5);
  }
  static constexpr std::array<std::array<int, 2>, 6> pairs{{{0, 0}, {0, 1}, {0, 2}, {1, 1}, {1, 2}, {2, 2}}};

  ScalarField& operator()(int i, int j) { return c[slot(i, j)]; }
  const ScalarField& operator()(int i, int j) const { return c[slot(i, j)]; }
  int n() const { return c[0].n(); }
  int band() const;
  SymTensorField resized(int n) const;

  SymTensorField& operator+=(const SymTensorField& o);
  SymTensorField& operator-=(const SymTensorField& o);
  SymTensorField& operator*=(double s);
  SymTensorField& axpy(double s, const SymTensorField& o);
  /// Adds s * Id.
  SymTensorField& add_identity(const ScalarField& s);
};

SymTensorField operator+(SymTensorField a, const SymTensorField& b);
SymTensorField operator-(SymTensorField a, const SymTensorField& b);

// ---- Fourier multipliers -------------------------------------------------------------

/// |k|^{2 theta} f, with the k = 0 mode set to zero.
ScalarField fractional_laplacian(const ScalarField& f, double theta);
VectorField fractional_laplacian(const VectorField& f, double theta);

/// |k|^s f with the k = 0 mode set to zero.
ScalarField riesz_power(const ScalarField& f, double s);
VectorField riesz_power(const VectorField& f, double s);

/// Solution of Delta u = f - mean(f) with zero mean.
ScalarField inverse_laplacian(const ScalarField& f);

/// Keeps modes with lo <= |k| < hi (hi may be infinity).
ScalarField fourier_project(const ScalarField& f, double lo, double hi);
VectorField fourier_project(const VectorField& f, double lo, double hi);
ScalarField remove_mean(ScalarField f);
VectorField remove_mean(VectorField f);

VectorField leray_project(const VectorField& f);

VectorField gradient(const ScalarField& f);
ScalarField divergence(const VectorField& f);
VectorField divergence(const SymTensorField& t);
VectorField curl(const VectorField& f);
ScalarField partial(const ScalarField& f, int axis);

// ---- Norms ---------------------------------------------------------------------------

/// Normalized-measure L^p norm by quadrature on an m^3 grid (m = 0 uses the field grid).
/// Vector and tensor fields use the pointwise Euclidean and Frobenius norms.
double lebesgue_norm(const ScalarField& f, double p, int m = 0);
double lebesgue_norm(const VectorField& f, double p, int m = 0);
double lebesgue_norm(const SymTensorField& f, double p, int m = 0);

/// Several exponents from one physical-space evaluation.
std::vector<double> lebesgue_norms(const ScalarField& f, std::span<const double> ps, int m = 0);
std::vector<double> lebesgue_norms(const VectorField& f, std::span<const double> ps, int m = 0);
std::vector<double> lebesgue_norms(const SymTensorField& f, std::span<const double> ps, int m = 0);

/// L^p norm of the full gradient matrix (pointwise Frobenius) of a vector field.
double gradient_lebesgue_norm(const VectorField& f, double p, int m = 0);

/// ||f||_{L^p} + || |grad|^s f ||_{L^p}.
double sobolev_norm(const ScalarField& f, double s, double p, int m = 0);
double sobolev_norm(const VectorField& f, double s, double p, int m = 0);

/// Exact L^2 norm from Parseval.
double l2_norm(const ScalarField& f);
double l2_norm(const VectorField& f);
double l2_norm(const SymTensorField& f);

/// Largest coefficient modulus.
double max_coeff(const ScalarField& f);
double max_coeff(const VectorField& f);
double max_coeff(const SymTensorField& f);

// ---- Products ------------------------------------------------------------------------

/// Alias-free collocation grid for pointwise expressions of band-limited fields.
///
/// Inputs are zero-padded onto an m^3 grid with m > 2 * band_sum; the result of a pointwise
/// expression whose total band is at most band_sum comes back exact up to rounding.
class ProductGrid {
 public:
  ProductGrid(int band_sum, int out_n);
  int m() const { return m_; }
  int band() const { return band_; }
  std::size_t size() const { return std::size_t(m_) * m_ * m_; }
  AlignedVector<double> physical(const ScalarField& f) const;
  ScalarField spectral(std::span<const double> values) const;

 private:
  int band_;
  int out_n_;
  int m_;
};

/// Exact product of two band-limited fields on an out_n grid (0 picks the larger input grid).
ScalarField multiply_dealiased(const ScalarField& f, const ScalarField& g, int out_n = 0);
VectorField multiply_dealiased(const ScalarField& f, const VectorField& g, int out_n = 0);
ScalarField dot_dealiased(const VectorField& f, const VectorField& g, int out_n = 0);
/// f (x) g + g (x) f.
SymTensorField symmetric_product(const VectorField& f, const VectorField& g, int out_n = 0);
/// f (x) f.
SymTensorField outer_square(const VectorField& f, int out_n = 0);

/// Shifts every mode by k0: returns the real field Re-part of 2 * c * e^{i k0.x} f, i.e.
/// c e^{ik0.x} f + conj(c) e^{-ik0.x} f, evaluated exactly by index shift.
ScalarField modulate(const ScalarField& f, const Wavevector& k0, Complex c, int out_n);

// ---- Multiplier template bodies ------------------------------------------------------

template <class Multiplier>
void ScalarField::apply(Multiplier&& m) {
  const int b = band_;
  for (int kx = -b; kx <= b; ++kx)
    for (int ky = -b; ky <= b; ++ky)
      for (int kz = 0; kz <= b; ++kz) {
        Complex& c = data_[index(kx, ky, kz)];
        c = m(Wavevector{kx, ky, kz}, c);
      }
  enforce_hermitian();
}

template <class Visitor>
void ScalarField::for_each_mode(Visitor&& f) const {
  const int b = band_;
  for (int kx = -b; kx <= b; ++kx)
    for (int ky = -b; ky <= b; ++ky)
      for (int kz = 0; kz <= b; ++kz) f(Wavevector{kx, ky, kz}, data_[index(kx, ky, kz)]);
}

}  // namespace hvci
