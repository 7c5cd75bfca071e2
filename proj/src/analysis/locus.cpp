#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>

#include "vcv/analysis.hpp"
#include "vcv/error.hpp"

namespace vcv::analysis {

namespace {

std::string fmt(double v, int decimals = 3) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

}  // namespace

LinearFit least_squares(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw FitError("fit: x and y differ in length");
  const auto n = x.size();
  if (n < 3) throw FitError("fit: need at least 3 points, got " + std::to_string(n));
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (!(sxx > 1e-12 * std::max(1.0, mx * mx))) throw FitError("fit: degenerate x variance");

  LinearFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  double ss_res = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = y[i] - (f.slope * x[i] + f.intercept);
    ss_res += r * r;
  }
  if (syy > 0.0) {
    f.r_squared = std::clamp(1.0 - ss_res / syy, 0.0, 1.0);
  } else {
    f.r_squared = 1.0;
  }
  return f;
}

LocusFit fit_locus(std::span<const FormantSample> samples, const std::string& consonant, int delta_t_ms,
                   Formant formant) {
  if (delta_t_ms != 0 && delta_t_ms != 40) throw FitError("locus: delta_t must be 0 or 40 ms");
  std::vector<double> x;
  std::vector<double> y;
  for (const auto& s : samples) {
    if (s.consonant != consonant) continue;
    if (formant == Formant::f2) {
      x.push_back(s.f2v2);
      y.push_back(delta_t_ms == 0 ? s.f2c : s.f2c2);
    } else {
      x.push_back(s.f3v2);
      y.push_back(delta_t_ms == 0 ? s.f3c : s.f3c2);
    }
  }
  if (x.size() < 3) {
    throw FitError("locus: consonant '" + consonant + "' has " + std::to_string(x.size()) + " samples, need 3");
  }
  const auto lf = least_squares(x, y);
  LocusFit fit;
  fit.consonant = consonant;
  fit.delta_t_ms = delta_t_ms;
  fit.formant = formant;
  fit.slope = lf.slope;
  fit.intercept = lf.intercept;
  fit.r_squared = lf.r_squared;
  fit.count = x.size();
  return fit;
}

std::string cluster_of(const std::string& consonant) {
  if (consonant == "gp" || consonant == "gv") return "g";
  return consonant;
}

std::vector<LindblomRow> lindblom_dataset(std::span<const FormantSample> samples,
                                          std::span<const std::string> expected_ids) {
  if (samples.empty()) throw CompletenessError("lindblom: empty corpus");
  std::set<std::string> present;
  for (const auto& s : samples) present.insert(s.id);
  for (const auto& id : expected_ids) {
    if (!present.count(id)) throw CompletenessError("lindblom: missing syllable '" + id + "'");
  }
  std::vector<LindblomRow> rows;
  rows.reserve(samples.size());
  for (const auto& s : samples) {
    rows.push_back({s.id, s.v1, s.v2, cluster_of(s.consonant), s.consonant, s.f2v2, s.f2c2, s.f3c2});
  }
  return rows;
}

std::string locus_csv(std::span<const FormantSample> samples, const std::string& consonant, int delta_t_ms) {
  std::ostringstream os;
  os << "id,vowel,F2v,F2c,F3v,F3c\n";
  for (const auto& s : samples) {
    if (s.consonant != consonant) continue;
    const double f2c = delta_t_ms == 0 ? s.f2c : s.f2c2;
    const double f3c = delta_t_ms == 0 ? s.f3c : s.f3c2;
    os << s.id << ',' << s.v2 << ',' << fmt(s.f2v2) << ',' << fmt(f2c) << ',' << fmt(s.f3v2) << ',' << fmt(f3c)
       << '\n';
  }
  return os.str();
}

std::string locus_fits_csv(std::span<const LocusFit> fits) {
  std::ostringstream os;
  os << "consonant,delta_t_ms,formant,slope,intercept,r_squared,count\n";
  for (const auto& f : fits) {
    os << f.consonant << ',' << f.delta_t_ms << ',' << (f.formant == Formant::f2 ? "F2" : "F3") << ','
       << fmt(f.slope, 6) << ',' << fmt(f.intercept, 3) << ',' << fmt(f.r_squared, 6) << ',' << f.count << '\n';
  }
  return os.str();
}

std::string lindblom_csv(std::span<const LindblomRow> rows) {
  std::ostringstream os;
  os << "id,v1,v2,cluster,sublabel,F2v,F2c,F3c\n";
  for (const auto& r : rows) {
    os << r.id << ',' << r.v1 << ',' << r.v2 << ',' << r.cluster << ',' << r.sublabel << ',' << fmt(r.f2v) << ','
       << fmt(r.f2c) << ',' << fmt(r.f3c) << '\n';
  }
  return os.str();
}

std::string transitions_csv(std::span<const TransitionClass> classes) {
  std::ostringstream os;
  os << "id,class,magnitude_hz,share_after,clear,inflection_frame\n";
  for (const auto& c : classes) {
    os << c.id << ',' << to_string(c.kind) << ',' << fmt(c.magnitude_hz) << ',' << fmt(c.share_after, 4) << ','
       << (c.clear ? 1 : 0) << ',' << c.inflection_frame << '\n';
  }
  return os.str();
}

std::string formant_track_csv(const acoustics::FormantTrack& track) {
  std::ostringstream os;
  os << "time_ms,F1,F2,F3,valid\n";
  for (std::size_t t = 0; t < track.size(); ++t) {
    const auto& f = track.formants[t];
    os << fmt(static_cast<double>(t) * track.frame_ms, 1) << ',' << fmt(f[0]) << ',' << fmt(f[1]) << ','
       << fmt(f[2]) << ',' << (track.valid[t] ? 1 : 0) << '\n';
  }
  return os.str();
}

}  // namespace vcv::analysis
