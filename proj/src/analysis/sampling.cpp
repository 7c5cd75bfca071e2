#include <algorithm>
#include <cmath>
#include <sstream>

#include "vcv/analysis.hpp"
#include "vcv/error.hpp"

namespace vcv::analysis {

namespace {

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const auto n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

// Median of F2 and F3 over the valid frames of [begin, end).
std::pair<double, double> steady_state(const acoustics::FormantTrack& track, int begin, int end, const char* which) {
  std::vector<double> f2;
  std::vector<double> f3;
  for (int t = std::max(begin, 0); t < std::min<int>(end, static_cast<int>(track.size())); ++t) {
    if (!track.valid[static_cast<std::size_t>(t)]) continue;
    f2.push_back(track.formants[static_cast<std::size_t>(t)][1]);
    f3.push_back(track.formants[static_cast<std::size_t>(t)][2]);
  }
  if (f2.empty()) throw SamplingError(std::string("sampling: no valid ") + which + " steady-state frames");
  return {median(f2), median(f3)};
}

// First valid frame starting at `from` and stepping by `dir`, at most
// `limit` frames away from `from`.
int find_valid(const acoustics::FormantTrack& track, int from, int dir, int limit) {
  for (int k = 0; k <= limit; ++k) {
    const int t = from + dir * k;
    if (t < 0 || t >= static_cast<int>(track.size())) break;
    if (track.valid[static_cast<std::size_t>(t)]) return t;
  }
  return -1;
}

}  // namespace

FormantSample sample_formants(const acoustics::FormantTrack& track, int onset_center, const SamplingOptions& options) {
  const int n = static_cast<int>(track.size());
  if (onset_center < 0 || onset_center >= n) throw SamplingError("sampling: onset center outside the track");
  if (options.steady_frames <= 0) throw ParameterError("sampling: steady_frames must be positive");

  const int offset = static_cast<int>(std::lround(options.offset_ms / track.frame_ms));
  FormantSample s;

  std::tie(s.f2v1, s.f3v1) = steady_state(track, 0, options.steady_frames, "V1");
  std::tie(s.f2v2, s.f3v2) = steady_state(track, n - options.steady_frames, n, "V2");

  s.frame_c1 = find_valid(track, onset_center - offset, -1, options.tolerance_frames);
  s.frame_c2 = find_valid(track, onset_center + offset, +1, options.tolerance_frames);
  if (s.frame_c1 < 0 || s.frame_c2 < 0) {
    std::ostringstream msg;
    msg << "sampling: no valid frame within " << options.tolerance_frames << " frames of dt = "
        << (s.frame_c1 < 0 ? "-" : "+") << options.offset_ms << " ms";
    throw SamplingError(msg.str());
  }

  // dt = 0 sits inside the closure; take the boundary frame on the chosen side.
  const int dir = options.zero_side == ZeroSide::before ? -1 : +1;
  s.frame_c = find_valid(track, onset_center, dir, offset + options.tolerance_frames);
  if (s.frame_c < 0) throw SamplingError("sampling: no valid frame at the closure boundary");

  const auto& c1 = track.formants[static_cast<std::size_t>(s.frame_c1)];
  const auto& c0 = track.formants[static_cast<std::size_t>(s.frame_c)];
  const auto& c2 = track.formants[static_cast<std::size_t>(s.frame_c2)];
  s.f2c1 = c1[1];
  s.f3c1 = c1[2];
  s.f2c = c0[1];
  s.f3c = c0[2];
  s.f2c2 = c2[1];
  s.f3c2 = c2[2];
  return s;
}

std::string_view to_string(TransitionKind kind) {
  switch (kind) {
    case TransitionKind::a:
      return "A";
    case TransitionKind::b:
      return "B";
    case TransitionKind::perturbation:
      return "perturbation";
  }
  return "?";
}

TransitionClass classify_transition(const acoustics::FormantTrack& track, int onset_center,
                                    const TransitionThresholds& thresholds, const SamplingOptions& options) {
  const int n = static_cast<int>(track.size());
  TransitionClass out;
  const auto [f2v1, f3v1] = steady_state(track, 0, options.steady_frames, "V1");
  const auto [f2v2, f3v2] = steady_state(track, n - options.steady_frames, n, "V2");
  (void)f3v1;
  (void)f3v2;
  out.magnitude_hz = f2v2 - f2v1;

  const int pre = find_valid(track, onset_center, -1, n);
  const int post = find_valid(track, onset_center, +1, n);
  if (pre < 0 || post < 0) throw SamplingError("classify: no valid F2 on one side of the closure");

  const double moved_before = std::abs(track.f2(static_cast<std::size_t>(pre)) - f2v1);
  const double moved_after = std::abs(f2v2 - track.f2(static_cast<std::size_t>(post)));
  const double total = moved_before + moved_after;
  out.share_after = total > 0.0 ? moved_after / total : 0.5;

  // Midpoint crossing on the valid frames.
  const double mid = 0.5 * (f2v1 + f2v2);
  const double sign = f2v2 >= f2v1 ? 1.0 : -1.0;
  for (int t = 0; t < n; ++t) {
    if (!track.valid[static_cast<std::size_t>(t)]) continue;
    if (sign * (track.f2(static_cast<std::size_t>(t)) - mid) >= 0.0) {
      out.inflection_frame = t;
      break;
    }
  }

  if (std::abs(out.magnitude_hz) < thresholds.magnitude_hz) {
    out.kind = TransitionKind::perturbation;
    out.clear = true;
    return out;
  }
  out.kind = out.share_after >= 0.5 ? TransitionKind::a : TransitionKind::b;
  out.clear = std::max(out.share_after, 1.0 - out.share_after) >= thresholds.dominance;
  return out;
}

}  // namespace vcv::analysis
