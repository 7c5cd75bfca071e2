#pragma once

#include <array>
#include <complex>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "vcv/planner.hpp"

namespace vcv::articulator {

inline constexpr std::size_t kParamCount = 7;

/// Articulatory parameters in model order. Units are standard deviations
/// of the underlying factor analysis.
enum class Param : std::size_t { jaw = 0, body, dorsum, tip, lip_protrusion, lip_height, hyoid };

inline constexpr std::array<std::string_view, kParamCount> kParamNames = {
    "Jaw", "Body", "Dorsum", "Tip", "LipP", "LipH", "Hy"};

inline constexpr double kParamLimit = 3.0;

using ParamVector = std::array<double, kParamCount>;
using Selection = std::array<bool, kParamCount>;

/// Offsets, complex coefficients and the vocalic/consonantal split that
/// turn the two planar streams into parameter values.
struct ArticulatorMap {
  ParamVector omega{};
  std::array<std::complex<double>, kParamCount> psi{};
  Selection consonantal{};  // S_c; S_v is its complement

  Selection vocalic() const;
};

/// Omega and Psi, read from the calibration file.
struct Calibration {
  ParamVector omega{};
  std::array<std::complex<double>, kParamCount> psi{};

  static Calibration parse(std::string_view text);
  static Calibration load(const std::string& path);
  std::string to_text() const;

  /// Pairs the calibration with a consonant's articulator set (1-based).
  ArticulatorMap map_for(std::span<const int> consonant_articulators) const;
};

struct ParamTrack {
  std::vector<ParamVector> frames;
  double frame_ms = 10.0;
};

/// Per-frame P = Omega + Re[S_v * Psi * conj(z_v) + S_c * Psi * conj(z_c)],
/// each component then clamped to [-3, 3].
ParamTrack compose_parameters(std::span<const std::complex<double>> z_v,
                              std::span<const std::complex<double>> z_c, const ArticulatorMap& map);

/// Same affine map without the clamp.
ParamVector compose_unclamped(std::complex<double> z_v, std::complex<double> z_c, const ArticulatorMap& map);

ParamVector clamp(const ParamVector& p);

struct TubeSection {
  double length_cm = 0.0;
  double area_cm2 = 0.0;
};

/// Tube sections ordered from glottis to lips.
struct AreaFunction {
  std::vector<TubeSection> sections;
  int frame = 0;

  double total_length() const;
  double min_area() const;
  std::size_t min_index() const;
};

/// Redistributes an area function over `count` equal-length sections,
/// preserving total length and volume.
AreaFunction resample(const AreaFunction& area, std::size_t count);

/// Linear articulatory model on a fixed grid of sagittal lines: the
/// sagittal distance is the mean profile plus a weighted sum of seven basis
/// vectors, and each line's distance maps to an area by a power law.
class ArticulatoryModel {
public:
  struct GridLine {
    std::string region;
    double length_cm = 0.0;
    double mean_distance_cm = 0.0;
    double alpha = 0.0;
    double beta = 0.0;
    double length_lip_protrusion = 0.0;  // relative length change per LipP unit
    double length_hyoid = 0.0;           // relative length change per Hy unit
  };

  static ArticulatoryModel parse(std::string_view text);
  static ArticulatoryModel load(const std::string& path);

  std::size_t grid_size() const { return lines_.size(); }
  const std::vector<GridLine>& lines() const { return lines_; }
  double area_floor() const { return area_floor_; }

  /// Sagittal distance per grid line (cm) for the clamped parameters; may be
  /// negative under closure.
  std::vector<double> sagittal_distances(const ParamVector& p) const;

  /// Area function on the native grid, resampled to `sections` when it
  /// differs from the grid size (0 keeps the grid).
  AreaFunction area(const ParamVector& p, std::size_t sections = 0) const;

  /// Index of the first grid line whose region equals `region`, or npos.
  std::size_t region_begin(std::string_view region) const;
  std::size_t region_end(std::string_view region) const;

private:
  std::vector<GridLine> lines_;
  std::array<std::vector<double>, kParamCount> basis_;
  double area_floor_ = 0.001;
};

/// Area below which a frame counts as a consonantal closure (cm^2).
inline constexpr double kClosureThreshold = 0.05;

struct Tracks {
  ParamTrack params;
  std::vector<AreaFunction> areas;
  std::vector<bool> closure;  // per frame: min area < closure threshold
  ArticulatorMap map;

  /// First and one-past-last frame of the longest closure run; empty when
  /// the tract never closes.
  std::pair<int, int> closure_interval() const;
};

Tracks build_tracks(const planner::SyllablePlan& plan, std::span<const int> consonant_articulators,
                    const Calibration& calibration, const ArticulatoryModel& model,
                    std::size_t sections = 29);

}  // namespace vcv::articulator
