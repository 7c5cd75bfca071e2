#pragma once

#include <span>
#include <string>
#include <vector>

#include "vcv/acoustics.hpp"

namespace vcv::analysis {

enum class ZeroSide {
  before,  // last valid frame before the closure (VCV)
  after,   // first valid frame after the closure (CV release)
};

struct SamplingOptions {
  double offset_ms = 40.0;
  int tolerance_frames = 3;  // how far past an invalid offset frame to look
  int steady_frames = 10;    // vowel steady-state frames at each end
  ZeroSide zero_side = ZeroSide::before;
};

/// Five-point F2 skeleton with F3 companions.
struct FormantSample {
  std::string id;
  std::string consonant;  // resolved label (b, d, gp, gv)
  std::string v1;
  std::string v2;
  double f2v1 = 0, f3v1 = 0;  // V1 steady state (median)
  double f2v2 = 0, f3v2 = 0;  // V2 steady state (median)
  double f2c1 = 0, f3c1 = 0;  // dt = -offset
  double f2c = 0, f3c = 0;    // dt = 0 (closure boundary)
  double f2c2 = 0, f3c2 = 0;  // dt = +offset
  int frame_c1 = 0, frame_c = 0, frame_c2 = 0;
};

FormantSample sample_formants(const acoustics::FormantTrack& track, int onset_center,
                              const SamplingOptions& options = {});

enum class Formant { f2, f3 };

struct LocusFit {
  std::string consonant;
  int delta_t_ms = 0;
  Formant formant = Formant::f2;
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  std::size_t count = 0;
};

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

/// Ordinary least squares y = slope * x + intercept.
LinearFit least_squares(std::span<const double> x, std::span<const double> y);

/// Locus equation for one consonant: onset formant (dt = 0 uses f2c/f3c,
/// dt = 40 uses f2c2/f3c2) regressed on the V2 steady-state value.
LocusFit fit_locus(std::span<const FormantSample> samples, const std::string& consonant, int delta_t_ms,
                   Formant formant = Formant::f2);

enum class TransitionKind { a, b, perturbation };

std::string_view to_string(TransitionKind kind);

struct TransitionThresholds {
  double magnitude_hz = 150.0;  // net |F2v2 - F2v1| below this is a perturbation
  double dominance = 0.6;       // share of movement marking a clear case
};

struct TransitionClass {
  std::string id;
  TransitionKind kind = TransitionKind::perturbation;
  double magnitude_hz = 0.0;     // F2v2 - F2v1
  double share_after = 0.0;      // post-closure share of the F2 movement
  bool clear = false;            // dominant share reaches the threshold
  int inflection_frame = -1;     // first valid frame past the F2 midpoint
};

/// Case A when most of the F2 movement happens after the onset center,
/// case B when it happens before, perturbation when V1 and V2 barely differ.
TransitionClass classify_transition(const acoustics::FormantTrack& track, int onset_center,
                                    const TransitionThresholds& thresholds = {},
                                    const SamplingOptions& options = {});

struct LindblomRow {
  std::string id;
  std::string v1;
  std::string v2;
  std::string cluster;   // b, d, g
  std::string sublabel;  // b, d, gp, gv
  double f2v = 0.0;
  double f2c = 0.0;
  double f3c = 0.0;
};

/// One row per VCV: (F2v2, F2c, F3c) at +offset. `expected_ids`, when not
/// empty, must all be present.
std::vector<LindblomRow> lindblom_dataset(std::span<const FormantSample> samples,
                                          std::span<const std::string> expected_ids = {});

/// Cluster label of a resolved consonant ("gp" -> "g").
std::string cluster_of(const std::string& consonant);

std::string locus_csv(std::span<const FormantSample> samples, const std::string& consonant, int delta_t_ms);
std::string locus_fits_csv(std::span<const LocusFit> fits);
std::string lindblom_csv(std::span<const LindblomRow> rows);
std::string transitions_csv(std::span<const TransitionClass> classes);
std::string formant_track_csv(const acoustics::FormantTrack& track);

}  // namespace vcv::analysis
