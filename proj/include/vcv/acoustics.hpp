#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "vcv/articulator.hpp"

namespace vcv::acoustics {

enum class LossModel {
  lossless,
  viscous,  // per-section series resistance from boundary-layer friction
};

enum class Radiation {
  ideal_open,  // zero load at the lips
  piston,      // piston in an infinite baffle (parallel R-L)
};

struct AcousticConfig {
  double sound_speed = 35000.0;  // cm/s
  double air_density = 1.14e-3;  // g/cm^3
  double air_viscosity = 1.86e-4;
  LossModel loss = LossModel::lossless;
  double loss_scale = 1.0;
  Radiation radiation = Radiation::piston;
};

/// Uniform grid 0, step, 2 step, ... up to and including f_max.
struct FrequencyGrid {
  double step_hz = 5.0;
  double f_max_hz = 5000.0;

  std::size_t size() const;
  double at(std::size_t i) const { return step_hz * static_cast<double>(i); }
};

/// Glottis-to-lips volume-velocity transfer function U_lips / U_glottis.
struct TransferFunction {
  FrequencyGrid grid;
  std::vector<std::complex<double>> gain;

  double magnitude(std::size_t i) const { return std::abs(gain[i]); }
};

/// Chain-matrix cascade over the tube sections, terminated by the
/// configured radiation load.
TransferFunction transfer_function(const articulator::AreaFunction& area, const FrequencyGrid& grid,
                                   const AcousticConfig& config = {});

/// Complex gain at arbitrary frequencies (used for impulse responses).
std::vector<std::complex<double>> transfer_at(const articulator::AreaFunction& area,
                                              std::span<const double> freqs_hz, const AcousticConfig& config);

/// Frequencies of the n lowest local maxima of |H|, each refined by a
/// parabola through the log-magnitude of the peak bin and its neighbours.
std::vector<double> extract_formants(const TransferFunction& h, std::size_t n = 3);

struct FormantTrack {
  std::vector<std::array<double, 3>> formants;  // F1..F3 in Hz, 0 when invalid
  std::vector<bool> valid;
  double frame_ms = 10.0;

  std::size_t size() const { return formants.size(); }
  double f2(std::size_t frame) const { return formants[frame][1]; }
};

/// Formants for every frame; frames flagged as closure (or with fewer than
/// three peaks) are left invalid.
FormantTrack formant_track(std::span<const articulator::AreaFunction> areas, const std::vector<bool>& closure,
                           double frame_ms, const FrequencyGrid& grid = {}, const AcousticConfig& config = {});

struct SourceConfig {
  double sample_rate = 10000.0;
  double f0_hz = 120.0;
  double f0_declination_hz_per_s = 0.0;
  double open_quotient = 0.6;    // Rosenberg pulse
  double ramp_ms = 20.0;         // raised-cosine ramp into/out of silence
  double silence_ms = 60.0;      // silent window centered on the onset center
  std::size_t fft_size = 1024;   // per-frame block; the filter sees this much source history
  double peak = 0.9;             // output normalization
  AcousticConfig acoustics{AcousticConfig{35000.0, 1.14e-3, 1.86e-4, LossModel::viscous, 1.0, Radiation::piston}};
};

struct RenderedSyllable {
  double sample_rate = 10000.0;
  std::vector<double> samples;
  std::vector<double> envelope;
  int onset_center_frame = 0;
  std::size_t onset_center_sample = 0;
  double frame_ms = 10.0;
};

/// Amplitude envelope: 1 on vowels, raised-cosine ramps into a zero window
/// centered on `center_sample`.
std::vector<double> syllable_envelope(std::size_t length, std::size_t center_sample, double sample_rate,
                                      double silence_ms, double ramp_ms);

/// Pulse-train source filtered frame by frame: each frame's filter runs over
/// the source (overlap-save) and the outputs are cross-faded with Hann
/// windows at the frame rate, then shaped by the syllable envelope. Closure
/// frames reuse the nearest open frame's filter.
RenderedSyllable render(std::span<const articulator::AreaFunction> areas, const std::vector<bool>& closure,
                        int onset_center_frame, double frame_ms, const SourceConfig& source = {});

struct Spectrogram {
  double window_ms = 25.0;
  double hop_ms = 5.0;
  double bin_hz = 0.0;
  double floor_db = -120.0;
  std::vector<double> times_ms;  // window centers
  std::vector<std::vector<double>> db;  // [frame][bin], bins 0..f_max

  std::size_t bins() const { return db.empty() ? 0 : db.front().size(); }
};

/// Short-time Fourier magnitude in dB (Hann window), bins up to f_max.
Spectrogram spectrogram(std::span<const double> samples, double sample_rate, double window_ms = 25.0,
                        double hop_ms = 5.0, double f_max_hz = 4000.0);

/// RIFF PCM, mono, 16-bit.
std::vector<std::uint8_t> encode_wav(std::span<const double> samples, double sample_rate);
void write_wav(const std::string& path, std::span<const double> samples, double sample_rate);

/// Decodes a mono 16-bit PCM WAV written by encode_wav.
std::vector<double> decode_wav(std::span<const std::uint8_t> bytes, double* sample_rate = nullptr);

}  // namespace vcv::acoustics
