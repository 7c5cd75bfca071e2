#include <cmath>

#include "vcv/acoustics.hpp"
#include "vcv/error.hpp"

namespace vcv::acoustics {

std::vector<double> extract_formants(const TransferFunction& h, std::size_t n) {
  std::vector<double> logmag(h.gain.size());
  for (std::size_t i = 0; i < h.gain.size(); ++i) logmag[i] = std::log(std::max(h.magnitude(i), 1e-300));

  std::vector<double> peaks;
  // Bin 0 is never a peak: DC gain of a tube is 1 and has no left neighbour.
  for (std::size_t i = 1; i + 1 < logmag.size() && peaks.size() < n; ++i) {
    const double a = logmag[i - 1];
    const double b = logmag[i];
    const double c = logmag[i + 1];
    if (!(b > a && b >= c)) continue;
    const double den = a - 2.0 * b + c;
    const double offset = den != 0.0 ? 0.5 * (a - c) / den : 0.0;
    peaks.push_back(h.grid.at(i) + offset * h.grid.step_hz);
  }
  if (peaks.size() < n) {
    throw ExtractionError("formants: found " + std::to_string(peaks.size()) + " peaks below " +
                          std::to_string(h.grid.f_max_hz) + " Hz, need " + std::to_string(n));
  }
  return peaks;
}

FormantTrack formant_track(std::span<const articulator::AreaFunction> areas, const std::vector<bool>& closure,
                           double frame_ms, const FrequencyGrid& grid, const AcousticConfig& config) {
  if (closure.size() != areas.size()) throw ParameterError("formant track: closure mask length mismatch");
  FormantTrack track;
  track.frame_ms = frame_ms;
  track.formants.assign(areas.size(), {0.0, 0.0, 0.0});
  track.valid.assign(areas.size(), false);
  for (std::size_t t = 0; t < areas.size(); ++t) {
    if (closure[t]) continue;
    try {
      const auto f = extract_formants(transfer_function(areas[t], grid, config), 3);
      if (f[0] > 0.0 && f[0] < f[1] && f[1] < f[2]) {
        track.formants[t] = {f[0], f[1], f[2]};
        track.valid[t] = true;
      }
    } catch (const ExtractionError&) {
      // left invalid
    }
  }
  return track;
}

}  // namespace vcv::acoustics
