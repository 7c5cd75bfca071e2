#include <cmath>

#include "vcv/error.hpp"
#include "vcv/planner.hpp"

namespace vcv::planner {

Complex arc_point(const Arc& arc, double t) {
  if (!(arc.k_shape > 0.0)) throw ParameterError("arc: curvature stiffness K must be positive");
  if (arc.nu != 1 && arc.nu != -1) throw ParameterError("arc: nu must be +1 or -1");
  if (arc.duration_frames != arc.profile.duration_frames) {
    throw ParameterError("arc: duration and profile duration differ");
  }
  // Degenerate arc: no bulge around a zero-length chord.
  if (arc.from.rho == arc.to.rho && arc.from.theta == arc.to.theta) {
    (void)tau_eval(arc.profile, t);
    return arc.from.point();
  }
  // Weight on the 'from' endpoint; decays to 0 at t = D.
  const double rho = tau_eval(arc.profile, t);
  const double theta = theta_schedule(arc.theta_amplitude, arc.duration_frames, t);
  const double bend = static_cast<double>(arc.nu) / arc.k_shape * theta;
  return rho * arc.from.point() + (1.0 - rho) * std::polar(arc.to.rho, arc.to.theta + bend);
}

std::vector<Complex> plan_arc(const Arc& arc) {
  std::vector<Complex> out;
  out.reserve(static_cast<std::size_t>(std::max(arc.duration_frames, 0)));
  for (int t = 1; t <= arc.duration_frames; ++t) out.push_back(arc_point(arc, t));
  return out;
}

PolarTarget reduced_vowel(const PolarTarget& v) {
  return PolarTarget{v.label + "_red", 0.5 * v.rho, v.theta};
}

namespace {

Arc make_arc(const PolarTarget& from, const PolarTarget& to, int frames, double k, TauForm form,
             const PlanOptions& o) {
  Arc arc;
  arc.from = from;
  arc.to = to;
  arc.duration_frames = frames;
  arc.k_shape = k;
  arc.nu = o.nu;
  arc.theta_amplitude = o.theta_amplitude;
  arc.profile = TauProfile{1.0, frames, o.kappa, form};
  return arc;
}

}  // namespace

SyllablePlan plan_syllable(const PolarTarget& v1, const PolarTarget& c, const PolarTarget& v2,
                           const PlanOptions& options) {
  if (options.t_frames <= 0) throw ParameterError("plan: T must be positive");
  if (options.padding_frames < 0) throw ParameterError("plan: padding must be non-negative");
  if (!(options.frame_ms > 0.0)) throw ParameterError("plan: frame duration must be positive");

  SyllablePlan plan;
  plan.v1 = v1;
  plan.c = c;
  plan.v2 = v2;
  plan.t_frames = options.t_frames;
  plan.padding_frames = options.padding_frames;
  plan.frame_ms = options.frame_ms;

  const int t = options.t_frames;
  // Only the approach to the consonant uses the direct decay; the release
  // and the vowel-to-vowel arc use the gap-closing variant.
  plan.v1_c = make_arc(v1, c, t, options.k_consonant, TauForm::harmonic, options);
  plan.c_v2 = make_arc(c, v2, t, options.k_consonant, TauForm::harmonic_closing, options);
  plan.v1_v2 = make_arc(v1, v2, 2 * t, options.k_vowel, TauForm::harmonic_closing, options);

  const auto n = static_cast<std::size_t>(2 * options.padding_frames + 2 * t);
  plan.vowel_stream.reserve(n);
  plan.consonant_stream.reserve(n);

  for (int i = 0; i < options.padding_frames; ++i) {
    plan.vowel_stream.push_back(v1.point());
    plan.consonant_stream.push_back(v1.point());
  }
  for (const auto& z : plan_arc(plan.v1_v2)) plan.vowel_stream.push_back(z);
  for (const auto& z : plan_arc(plan.v1_c)) plan.consonant_stream.push_back(z);
  for (const auto& z : plan_arc(plan.c_v2)) plan.consonant_stream.push_back(z);
  for (int i = 0; i < options.padding_frames; ++i) {
    plan.vowel_stream.push_back(v2.point());
    plan.consonant_stream.push_back(v2.point());
  }
  return plan;
}

SyllablePlan plan_cv(const PolarTarget& c, const PolarTarget& v, const PlanOptions& options) {
  auto plan = plan_syllable(reduced_vowel(v), c, v, options);
  plan.reduced_onset = true;
  return plan;
}

}  // namespace vcv::planner
