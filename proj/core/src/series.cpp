#include "series.hpp"

#include <algorithm>
#include <complex>
#include <mutex>

#include <fftw3.h>

#include "vtorus/error.hpp"

namespace vtorus::detail {

std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}

namespace {

struct FftwBuffer {
  explicit FftwBuffer(std::size_t bytes) : ptr(fftw_malloc(bytes)) {
    if (!ptr) throw NumericalFailure("fftw_malloc failed");
  }
  ~FftwBuffer() { fftw_free(ptr); }
  FftwBuffer(const FftwBuffer&) = delete;
  FftwBuffer& operator=(const FftwBuffer&) = delete;
  void* ptr;
};

class RealConvolver {
 public:
  explicit RealConvolver(std::size_t size)
      : size_(size),
        real_(sizeof(double) * size),
        spec_a_(sizeof(fftw_complex) * (size / 2 + 1)),
        spec_b_(sizeof(fftw_complex) * (size / 2 + 1)) {
    std::lock_guard lock(fftw_planner_mutex());
    const int n = static_cast<int>(size);
    forward_ = fftw_plan_dft_r2c_1d(n, real(), spec(spec_a_), FFTW_ESTIMATE);
    backward_ = fftw_plan_dft_c2r_1d(n, spec(spec_a_), real(), FFTW_ESTIMATE);
  }
  ~RealConvolver() {
    std::lock_guard lock(fftw_planner_mutex());
    fftw_destroy_plan(forward_);
    fftw_destroy_plan(backward_);
  }
  RealConvolver(const RealConvolver&) = delete;
  RealConvolver& operator=(const RealConvolver&) = delete;

  std::vector<double> run(std::span<const double> a, std::span<const double> b, std::size_t n) {
    load(a);
    fftw_execute_dft_r2c(forward_, real(), spec(spec_a_));
    load(b);
    fftw_execute_dft_r2c(forward_, real(), spec(spec_b_));
    auto* x = spec(spec_a_);
    auto* y = spec(spec_b_);
    const double scale = 1.0 / static_cast<double>(size_);
    for (std::size_t k = 0; k < size_ / 2 + 1; ++k) {
      const double re = x[k][0] * y[k][0] - x[k][1] * y[k][1];
      const double im = x[k][0] * y[k][1] + x[k][1] * y[k][0];
      x[k][0] = re * scale;
      x[k][1] = im * scale;
    }
    fftw_execute_dft_c2r(backward_, spec(spec_a_), real());
    return std::vector<double>(real(), real() + n);
  }

 private:
  double* real() { return static_cast<double*>(real_.ptr); }
  static fftw_complex* spec(FftwBuffer& b) { return static_cast<fftw_complex*>(b.ptr); }
  void load(std::span<const double> v) {
    std::fill(real(), real() + size_, 0.0);
    std::copy(v.begin(), v.end(), real());
  }

  std::size_t size_;
  FftwBuffer real_;
  FftwBuffer spec_a_;
  FftwBuffer spec_b_;
  fftw_plan forward_ = nullptr;
  fftw_plan backward_ = nullptr;
};

std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

}  // namespace

std::vector<double> series_multiply(std::span<const double> a, std::span<const double> b,
                                    std::size_t n) {
  if (n == 0) return {};
  a = a.subspan(0, std::min(a.size(), n));
  b = b.subspan(0, std::min(b.size(), n));
  if (a.empty() || b.empty()) return std::vector<double>(n, 0.0);
  RealConvolver conv(next_pow2(a.size() + b.size() - 1));
  auto out = conv.run(a, b, std::min(n, a.size() + b.size() - 1));
  out.resize(n, 0.0);
  return out;
}

std::vector<double> series_inverse(std::span<const double> d, std::size_t n) {
  if (n == 0) return {};
  if (d.empty() || d[0] == 0.0) throw NumericalFailure("series_inverse: zero constant term");
  std::vector<double> g{1.0 / d[0]};
  std::size_t len = 1;
  while (len < n) {
    len = std::min(2 * len, n);
    // g <- g (2 - d g) mod x^len
    auto dg = series_multiply(d.subspan(0, std::min(d.size(), len)), g, len);
    for (auto& v : dg) v = -v;
    dg[0] += 2.0;
    g = series_multiply(g, dg, len);
  }
  return g;
}

}  // namespace vtorus::detail
