#include "vcv/articulator.hpp"

namespace vcv::articulator {

std::pair<int, int> Tracks::closure_interval() const {
  std::pair<int, int> best{0, 0};
  int start = -1;
  const int n = static_cast<int>(closure.size());
  for (int i = 0; i <= n; ++i) {
    const bool closed = i < n && closure[static_cast<std::size_t>(i)];
    if (closed && start < 0) start = i;
    if (!closed && start >= 0) {
      if (i - start > best.second - best.first) best = {start, i};
      start = -1;
    }
  }
  return best;
}

Tracks build_tracks(const planner::SyllablePlan& plan, std::span<const int> consonant_articulators,
                    const Calibration& calibration, const ArticulatoryModel& model, std::size_t sections) {
  Tracks tracks;
  tracks.map = calibration.map_for(consonant_articulators);
  tracks.params = compose_parameters(plan.vowel_stream, plan.consonant_stream, tracks.map);
  tracks.params.frame_ms = plan.frame_ms;

  tracks.areas.reserve(tracks.params.frames.size());
  tracks.closure.reserve(tracks.params.frames.size());
  for (std::size_t t = 0; t < tracks.params.frames.size(); ++t) {
    auto a = model.area(tracks.params.frames[t], sections);
    a.frame = static_cast<int>(t);
    tracks.closure.push_back(a.min_area() < kClosureThreshold);
    tracks.areas.push_back(std::move(a));
  }
  return tracks;
}

}  // namespace vcv::articulator
