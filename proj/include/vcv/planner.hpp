#pragma once

#include <complex>
#include <numbers>
#include <string>
#include <string_view>
#include <vector>

namespace vcv::planner {

using Complex = std::complex<double>;

/// A phoneme's place/degree encoding in the planning plane.
struct PolarTarget {
  std::string label;
  double rho = 0.0;
  double theta = 0.0;  // radians, normalized to [0, 2pi)

  Complex point() const { return std::polar(rho, theta); }
};

enum class TauForm {
  power,             // X0 (1 - t^2/D^2)^(1/kappa)
  harmonic,          // X0 cos(pi t / 2D)^(1/kappa)
  harmonic_closing,  // 1 - X(D - t), X harmonic
};

struct TauProfile {
  double x0 = 1.0;
  int duration_frames = 16;
  double kappa = 0.5;
  TauForm form = TauForm::harmonic;
};

/// Gap value of the profile at frame t. Defined on 0 <= t <= D; frame 0 is
/// the continuation point shared with the preceding segment.
double tau_eval(const TauProfile& profile, double t);

/// Angular perturbation schedule: amplitude * sin(pi t / D).
double theta_schedule(double amplitude, int duration_frames, double t);

struct Arc {
  PolarTarget from;
  PolarTarget to;
  int duration_frames = 16;
  double k_shape = 10.0;  // curvature stiffness K
  int nu = 1;             // curvature sign
  double theta_amplitude = std::numbers::pi / 4.0;
  TauProfile profile;
};

/// Trajectory point at frame t (0 <= t <= D).
Complex arc_point(const Arc& arc, double t);

/// Samples frames 1..D of the arc.
std::vector<Complex> plan_arc(const Arc& arc);

enum class PhonemeClass { vowel, consonant };

struct Phoneme {
  PolarTarget target;
  PhonemeClass kind = PhonemeClass::vowel;
  bool front = false;               // vowels only
  std::vector<int> articulators;    // consonants only, 1-based parameter indices
  std::string allophone_of;         // e.g. "g" for gp/gv
};

/// Label -> phoneme table. Labels are X-SAMPA-like ASCII strings.
class Inventory {
public:
  Inventory() = default;

  /// Built-in table with the published positions and articulator sets.
  static Inventory defaults();

  /// Parses the line-oriented text format (see README).
  static Inventory parse(std::string_view text);
  static Inventory load(const std::string& path);

  void add(Phoneme phoneme);

  bool contains(std::string_view label) const;
  const Phoneme& at(std::string_view label) const;
  const std::vector<Phoneme>& phonemes() const { return phonemes_; }

  /// Resolves an allophone family ("g") to its member for the given vowel
  /// context; plain consonant labels resolve to themselves.
  const Phoneme& resolve_consonant(std::string_view label, std::string_view context_vowel) const;

  /// Splits a syllable string such as "ydu" or "du" into labels, greedily
  /// matching the longest known label (allophone family names included).
  std::vector<std::string> tokenize(std::string_view syllable) const;

  std::string to_text() const;

private:
  std::vector<Phoneme> phonemes_;
};

struct PlanOptions {
  int t_frames = 16;
  double k_vowel = 30.0;
  double k_consonant = 10.0;
  int padding_frames = 10;
  double theta_amplitude = std::numbers::pi / 4.0;
  int nu = 1;
  double kappa = 0.5;
  double frame_ms = 10.0;
};

struct SyllablePlan {
  PolarTarget v1;
  PolarTarget c;
  PolarTarget v2;
  bool reduced_onset = false;  // CV syllable: v1 is the reduced copy of v2
  int t_frames = 16;
  int padding_frames = 10;
  double frame_ms = 10.0;

  Arc v1_c;
  Arc c_v2;
  Arc v1_v2;

  // Full timelines (padding + 2T transition + padding), one point per frame.
  std::vector<Complex> vowel_stream;
  std::vector<Complex> consonant_stream;

  std::size_t frame_count() const { return vowel_stream.size(); }
  /// Frame of maximal constriction: the junction of the two consonant arcs.
  int onset_center_frame() const { return padding_frames + t_frames - 1; }
};

SyllablePlan plan_syllable(const PolarTarget& v1, const PolarTarget& c, const PolarTarget& v2,
                           const PlanOptions& options = {});

/// CV syllable: starts from the reduced vowel (0.5 rho_V, theta_V).
SyllablePlan plan_cv(const PolarTarget& c, const PolarTarget& v, const PlanOptions& options = {});

PolarTarget reduced_vowel(const PolarTarget& v);

}  // namespace vcv::planner
