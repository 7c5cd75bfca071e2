#include "vcv/planner.hpp"

#include <cmath>
#include <string>

#include "vcv/error.hpp"

namespace vcv::planner {

namespace {

constexpr double kPi = std::numbers::pi;

void check_profile(const TauProfile& profile) {
  if (profile.duration_frames <= 0) {
    throw ParameterError("tau profile: duration must be positive, got " +
                         std::to_string(profile.duration_frames));
  }
  if (!(profile.kappa > 0.0)) {
    throw ParameterError("tau profile: kappa must be positive, got " + std::to_string(profile.kappa));
  }
}

double harmonic(double x0, double duration, double kappa, double t) {
  // cos is clamped at zero so t = D yields exactly 0 instead of a tiny
  // negative base raised to a fractional power.
  const double c = std::max(0.0, std::cos(kPi * t / (2.0 * duration)));
  if (t >= duration) return 0.0;
  return x0 * std::pow(c, 1.0 / kappa);
}

}  // namespace

double tau_eval(const TauProfile& profile, double t) {
  check_profile(profile);
  const double d = profile.duration_frames;
  if (!(t >= 0.0 && t <= d)) {
    throw ParameterError("tau profile: t=" + std::to_string(t) + " outside [0, " +
                         std::to_string(profile.duration_frames) + "]");
  }
  switch (profile.form) {
    case TauForm::power: {
      if (t >= d) return 0.0;
      const double base = 1.0 - (t * t) / (d * d);
      return profile.x0 * std::pow(base, 1.0 / profile.kappa);
    }
    case TauForm::harmonic:
      return harmonic(profile.x0, d, profile.kappa, t);
    case TauForm::harmonic_closing:
      return 1.0 - harmonic(profile.x0, d, profile.kappa, d - t);
  }
  return 0.0;
}

double theta_schedule(double amplitude, int duration_frames, double t) {
  if (duration_frames <= 0) throw ParameterError("theta schedule: duration must be positive");
  if (t <= 0.0 || t >= duration_frames) return 0.0;
  return amplitude * std::sin(kPi * t / duration_frames);
}

}  // namespace vcv::planner
