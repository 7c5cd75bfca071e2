#pragma once

#include <complex>
#include <cstddef>
#include <span>

namespace vcv::acoustics::detail {

/// Real-input FFT of fixed size backed by FFTW. Plans are created under a
/// process-wide lock; execution on separate instances is thread-safe.
class RealFft {
public:
  explicit RealFft(std::size_t size);
  ~RealFft();
  RealFft(const RealFft&) = delete;
  RealFft& operator=(const RealFft&) = delete;

  std::size_t size() const { return size_; }
  std::size_t bins() const { return size_ / 2 + 1; }

  /// Zero-pads `input` to size() and returns bins() spectrum values.
  void forward(std::span<const double> input, std::span<std::complex<double>> spectrum);
  /// Unnormalized inverse: output = size() * IDFT(spectrum).
  void inverse(std::span<const std::complex<double>> spectrum, std::span<double> output);

private:
  std::size_t size_;
  double* real_ = nullptr;
  void* complex_ = nullptr;
  void* forward_plan_ = nullptr;
  void* inverse_plan_ = nullptr;
};

}  // namespace vcv::acoustics::detail
