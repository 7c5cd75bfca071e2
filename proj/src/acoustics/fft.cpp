#include "fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <mutex>
#include <new>

#include "vcv/error.hpp"

namespace vcv::acoustics::detail {

namespace {
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace

RealFft::RealFft(std::size_t size) : size_(size) {
  if (size < 2) throw ParameterError("fft: size must be at least 2");
  std::lock_guard lock(planner_mutex());
  real_ = fftw_alloc_real(size_);
  auto* spec = fftw_alloc_complex(bins());
  complex_ = spec;
  if (real_ == nullptr || spec == nullptr) throw std::bad_alloc();
  const int n = static_cast<int>(size_);
  forward_plan_ = fftw_plan_dft_r2c_1d(n, real_, spec, FFTW_ESTIMATE);
  inverse_plan_ = fftw_plan_dft_c2r_1d(n, spec, real_, FFTW_ESTIMATE);
}

RealFft::~RealFft() {
  std::lock_guard lock(planner_mutex());
  fftw_destroy_plan(static_cast<fftw_plan>(forward_plan_));
  fftw_destroy_plan(static_cast<fftw_plan>(inverse_plan_));
  fftw_free(real_);
  fftw_free(complex_);
}

void RealFft::forward(std::span<const double> input, std::span<std::complex<double>> spectrum) {
  if (input.size() > size_ || spectrum.size() != bins()) throw SizeError("fft: buffer size mismatch");
  std::fill(real_, real_ + size_, 0.0);
  std::copy(input.begin(), input.end(), real_);
  fftw_execute(static_cast<fftw_plan>(forward_plan_));
  const auto* spec = static_cast<const fftw_complex*>(complex_);
  for (std::size_t k = 0; k < bins(); ++k) spectrum[k] = {spec[k][0], spec[k][1]};
}

void RealFft::inverse(std::span<const std::complex<double>> spectrum, std::span<double> output) {
  if (spectrum.size() != bins() || output.size() != size_) throw SizeError("fft: buffer size mismatch");
  auto* spec = static_cast<fftw_complex*>(complex_);
  for (std::size_t k = 0; k < bins(); ++k) {
    spec[k][0] = spectrum[k].real();
    spec[k][1] = spectrum[k].imag();
  }
  // c2r destroys its input; the spectrum buffer is rewritten on every call.
  fftw_execute(static_cast<fftw_plan>(inverse_plan_));
  std::copy(real_, real_ + size_, output.begin());
}

}  // namespace vcv::acoustics::detail
