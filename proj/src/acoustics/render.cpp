#include <algorithm>
#include <cmath>
#include <numbers>

#include "fft.hpp"
#include "vcv/acoustics.hpp"
#include "vcv/error.hpp"

namespace vcv::acoustics {

namespace {

constexpr double kPi = std::numbers::pi;

// Derivative of a Rosenberg glottal flow pulse at phase x in [0, 1).
// Opening over 2/3 of the open phase, closing over the remaining third.
double rosenberg_derivative(double x, double open_quotient) {
  const double tp = open_quotient * 2.0 / 3.0;
  const double tn = open_quotient / 3.0;
  if (x < tp) return 0.5 * kPi / tp * std::sin(kPi * x / tp);
  if (x < tp + tn) return -0.5 * kPi / tn * std::sin(0.5 * kPi * (x - tp) / tn);
  return 0.0;
}

std::vector<double> glottal_source(std::size_t length, const SourceConfig& src) {
  std::vector<double> out(length);
  double phase = 0.0;
  for (std::size_t n = 0; n < length; ++n) {
    const double t = static_cast<double>(n) / src.sample_rate;
    const double f0 = std::max(20.0, src.f0_hz - src.f0_declination_hz_per_s * t);
    out[n] = rosenberg_derivative(phase, src.open_quotient);
    phase += f0 / src.sample_rate;
    phase -= std::floor(phase);
  }
  return out;
}

// Each closure frame borrows the filter of the nearest open frame.
std::vector<std::size_t> filter_sources(const std::vector<bool>& closure) {
  const std::size_t n = closure.size();
  std::vector<std::size_t> src(n);
  for (std::size_t t = 0; t < n; ++t) {
    src[t] = t;
    if (!closure[t]) continue;
    for (std::size_t d = 1; d < n; ++d) {
      if (t >= d && !closure[t - d]) {
        src[t] = t - d;
        break;
      }
      if (t + d < n && !closure[t + d]) {
        src[t] = t + d;
        break;
      }
    }
  }
  return src;
}

}  // namespace

std::vector<double> syllable_envelope(std::size_t length, std::size_t center_sample, double sample_rate,
                                      double silence_ms, double ramp_ms) {
  if (silence_ms < 0.0 || ramp_ms < 0.0) throw ParameterError("envelope: negative durations");
  const double half = 0.5 * silence_ms * 1e-3 * sample_rate;
  const double ramp = ramp_ms * 1e-3 * sample_rate;
  std::vector<double> env(length, 1.0);
  for (std::size_t n = 0; n < length; ++n) {
    const double dist = std::abs(static_cast<double>(n) - static_cast<double>(center_sample));
    if (dist <= half) {
      env[n] = 0.0;
    } else if (dist < half + ramp) {
      env[n] = 0.5 * (1.0 - std::cos(kPi * (dist - half) / ramp));
    }
  }
  return env;
}

RenderedSyllable render(std::span<const articulator::AreaFunction> areas, const std::vector<bool>& closure,
                        int onset_center_frame, double frame_ms, const SourceConfig& source) {
  if (areas.empty()) throw ParameterError("render: no frames");
  if (closure.size() != areas.size()) throw ParameterError("render: closure mask length mismatch");
  if (!(source.sample_rate > 0.0) || !(source.f0_hz > 0.0)) throw ParameterError("render: bad source config");

  const auto hop = static_cast<std::size_t>(std::lround(frame_ms * 1e-3 * source.sample_rate));
  if (hop == 0) throw ParameterError("render: frame shorter than one sample");
  const std::size_t frames = areas.size();
  const std::size_t length = frames * hop;
  const std::size_t seg_len = 2 * hop;
  std::size_t nfft = 1;
  while (nfft < std::max<std::size_t>(source.fft_size, 4 * seg_len)) nfft <<= 1;
  // Excitation history fed to each frame's filter ahead of its window.
  const std::size_t history = nfft - seg_len;

  const auto excitation = glottal_source(length + hop, source);

  detail::RealFft fft(nfft);
  std::vector<double> freqs(fft.bins());
  for (std::size_t k = 0; k < freqs.size(); ++k) {
    freqs[k] = source.sample_rate * static_cast<double>(k) / static_cast<double>(nfft);
  }

  // Hann window of length 2*hop; shifted copies at hop spacing sum to 1.
  std::vector<double> window(seg_len);
  for (std::size_t n = 0; n < seg_len; ++n) {
    window[n] = 0.5 * (1.0 - std::cos(2.0 * kPi * static_cast<double>(n) / static_cast<double>(seg_len)));
  }

  const auto filter_of = filter_sources(closure);
  std::vector<std::vector<std::complex<double>>> responses(frames);

  std::vector<double> out(length, 0.0);
  std::vector<std::complex<double>> spec(fft.bins());
  std::vector<double> block(nfft);

  // Frame t owns [t*hop - hop/2, t*hop + 3hop/2). Its filter runs over the
  // excitation (overlap-save) and the output is cross-faded with the window,
  // so the resonances heard at any instant are those of the nearby frames.
  for (std::size_t t = 0; t < frames; ++t) {
    const std::size_t f = filter_of[t];
    if (responses[f].empty()) responses[f] = transfer_at(areas[f], freqs, source.acoustics);

    const long start = static_cast<long>(t * hop) - static_cast<long>(hop / 2);
    const long first = start - static_cast<long>(history);
    for (std::size_t n = 0; n < nfft; ++n) {
      const long idx = first + static_cast<long>(n);
      block[n] = (idx >= 0 && static_cast<std::size_t>(idx) < excitation.size())
                     ? excitation[static_cast<std::size_t>(idx)]
                     : 0.0;
    }
    fft.forward(block, spec);
    for (std::size_t k = 0; k < spec.size(); ++k) spec[k] *= responses[f][k];
    fft.inverse(spec, block);
    for (std::size_t n = 0; n < seg_len; ++n) {
      const long idx = start + static_cast<long>(n);
      if (idx >= 0 && static_cast<std::size_t>(idx) < out.size()) {
        out[static_cast<std::size_t>(idx)] += window[n] * block[history + n] / static_cast<double>(nfft);
      }
    }
  }

  RenderedSyllable r;
  r.sample_rate = source.sample_rate;
  r.frame_ms = frame_ms;
  r.onset_center_frame = onset_center_frame;
  r.onset_center_sample = static_cast<std::size_t>(std::max(onset_center_frame, 0)) * hop + hop / 2;
  r.envelope = syllable_envelope(length, r.onset_center_sample, source.sample_rate, source.silence_ms,
                                 source.ramp_ms);

  double peak = 0.0;
  for (std::size_t n = 0; n < length; ++n) {
    out[n] *= r.envelope[n];
    peak = std::max(peak, std::abs(out[n]));
  }
  const double scale = peak > 0.0 ? source.peak / peak : 0.0;
  for (auto& s : out) s *= scale;
  r.samples = std::move(out);
  return r;
}

Spectrogram spectrogram(std::span<const double> samples, double sample_rate, double window_ms, double hop_ms,
                        double f_max_hz) {
  if (!(sample_rate > 0.0) || !(window_ms > 0.0) || !(hop_ms > 0.0)) {
    throw ParameterError("spectrogram: rates and durations must be positive");
  }
  const auto win = static_cast<std::size_t>(std::lround(window_ms * 1e-3 * sample_rate));
  const auto hop = static_cast<std::size_t>(std::lround(hop_ms * 1e-3 * sample_rate));
  if (win < 2 || hop == 0) throw ParameterError("spectrogram: window or hop too short");
  if (samples.size() < win) {
    throw SizeError("spectrogram: signal has " + std::to_string(samples.size()) + " samples, window needs " +
                    std::to_string(win));
  }
  std::size_t nfft = 1;
  while (nfft < win) nfft <<= 1;
  nfft = std::max<std::size_t>(nfft, 1024);

  detail::RealFft fft(nfft);
  std::vector<double> window(win);
  double wsum = 0.0;
  for (std::size_t n = 0; n < win; ++n) {
    window[n] = 0.5 * (1.0 - std::cos(2.0 * kPi * static_cast<double>(n) / static_cast<double>(win - 1)));
    wsum += window[n];
  }

  Spectrogram s;
  s.window_ms = window_ms;
  s.hop_ms = hop_ms;
  s.bin_hz = sample_rate / static_cast<double>(nfft);
  const auto nbins =
      std::min(fft.bins(), static_cast<std::size_t>(std::floor(f_max_hz / s.bin_hz + 1e-9)) + 1);

  std::vector<double> frame(win);
  std::vector<std::complex<double>> spec(fft.bins());
  for (std::size_t start = 0; start + win <= samples.size(); start += hop) {
    for (std::size_t n = 0; n < win; ++n) frame[n] = samples[start + n] * window[n];
    fft.forward(frame, spec);
    std::vector<double> row(nbins);
    for (std::size_t k = 0; k < nbins; ++k) {
      // A full-scale sinusoid reads about -6 dB.
      const double mag = std::abs(spec[k]) / wsum;
      row[k] = mag > 0.0 ? std::max(s.floor_db, 20.0 * std::log10(mag)) : s.floor_db;
    }
    s.db.push_back(std::move(row));
    s.times_ms.push_back((static_cast<double>(start) + 0.5 * static_cast<double>(win)) / sample_rate * 1e3);
  }
  return s;
}

}  // namespace vcv::acoustics
