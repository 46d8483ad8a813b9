#include "fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>
#include <mutex>
#include <new>
#include <utility>

#include "hvci/spectral.hpp"
#include "hvci/threads.hpp"

namespace hvci {
namespace detail {

void* aligned_alloc_bytes(std::size_t bytes) {
  void* p = fftw_malloc(bytes == 0 ? 1 : bytes);
  if (!p) throw std::bad_alloc();
  return p;
}

void aligned_free(void* p) noexcept { fftw_free(p); }

namespace {

struct PlanCache {
  std::mutex mutex;
  std::map<std::pair<int, bool>, fftw_plan> plans;
  int threads = 1;
  bool threads_initialised = false;

  ~PlanCache() {
    for (auto& [key, plan] : plans) fftw_destroy_plan(plan);
  }

  fftw_plan get(int m, bool forward) {
    std::lock_guard lock(mutex);
    auto it = plans.find({m, forward});
    if (it != plans.end()) return it->second;
    if (threads_initialised) fftw_plan_with_nthreads(threads);
    const std::size_t real_size = std::size_t(m) * m * m;
    const std::size_t complex_size = std::size_t(m) * m * (m / 2 + 1);
    auto* r = static_cast<double*>(fftw_malloc(sizeof(double) * real_size));
    auto* c = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * complex_size));
    fftw_plan plan = forward ? fftw_plan_dft_r2c_3d(m, m, m, r, c, FFTW_ESTIMATE | FFTW_PRESERVE_INPUT)
                             : fftw_plan_dft_c2r_3d(m, m, m, c, r, FFTW_ESTIMATE | FFTW_DESTROY_INPUT);
    fftw_free(r);
    fftw_free(c);
    if (!plan) throw std::runtime_error("FFT planning failed for grid " + std::to_string(m));
    plans.emplace(std::pair{m, forward}, plan);
    return plan;
  }

  void set_threads(int n) {
    std::lock_guard lock(mutex);
    if (!threads_initialised) {
      fftw_init_threads();
      threads_initialised = true;
    }
    threads = n < 1 ? 1 : n;
    for (auto& [key, plan] : plans) fftw_destroy_plan(plan);
    plans.clear();
  }
};

PlanCache& cache() {
  static PlanCache instance;
  return instance;
}

}  // namespace

void fft_forward(int m, const double* in, std::complex<double>* out) {
  fftw_plan plan = cache().get(m, true);
  auto* o = reinterpret_cast<fftw_complex*>(out);
  if (fftw_alignment_of(const_cast<double*>(in)) == 0 && fftw_alignment_of(reinterpret_cast<double*>(out)) == 0) {
    fftw_execute_dft_r2c(plan, const_cast<double*>(in), o);
    return;
  }
  const std::size_t real_size = std::size_t(m) * m * m;
  const std::size_t complex_size = std::size_t(m) * m * (m / 2 + 1);
  AlignedVector<double> a(in, in + real_size);
  AlignedVector<std::complex<double>> b(complex_size);
  fftw_execute_dft_r2c(plan, a.data(), reinterpret_cast<fftw_complex*>(b.data()));
  std::copy(b.begin(), b.end(), out);
}

void fft_inverse(int m, std::complex<double>* in, double* out) {
  fftw_plan plan = cache().get(m, false);
  if (fftw_alignment_of(reinterpret_cast<double*>(in)) == 0 && fftw_alignment_of(out) == 0) {
    fftw_execute_dft_c2r(plan, reinterpret_cast<fftw_complex*>(in), out);
    return;
  }
  const std::size_t real_size = std::size_t(m) * m * m;
  const std::size_t complex_size = std::size_t(m) * m * (m / 2 + 1);
  AlignedVector<std::complex<double>> a(in, in + complex_size);
  AlignedVector<double> b(real_size);
  fftw_execute_dft_c2r(plan, reinterpret_cast<fftw_complex*>(a.data()), b.data());
  std::copy(b.begin(), b.end(), out);
}

}  // namespace detail

void set_fft_threads(int n) { detail::cache().set_threads(n); }

}  // namespace hvci
