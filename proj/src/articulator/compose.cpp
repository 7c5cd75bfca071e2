#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "vcv/articulator.hpp"
#include "vcv/error.hpp"

namespace vcv::articulator {

Selection ArticulatorMap::vocalic() const {
  Selection s{};
  for (std::size_t i = 0; i < kParamCount; ++i) s[i] = !consonantal[i];
  return s;
}

namespace {

double to_double(const std::string& s, int lineno) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(v)) {
    throw DataError("calibration line " + std::to_string(lineno) + ": bad number '" + s + "'");
  }
  return v;
}

}  // namespace

// Format: one line per parameter, "param <Name> <omega> <psi_re> <psi_im>".
Calibration Calibration::parse(std::string_view text) {
  Calibration cal;
  std::array<bool, kParamCount> seen{};
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::vector<std::string> f;
    for (std::string tok; fields >> tok;) f.push_back(tok);
    if (f.empty()) continue;
    if (f[0] != "param" || f.size() != 5) {
      throw DataError("calibration line " + std::to_string(lineno) +
                      ": expected 'param <name> <omega> <psi_re> <psi_im>'");
    }
    const auto it = std::find(kParamNames.begin(), kParamNames.end(), f[1]);
    if (it == kParamNames.end()) {
      throw DataError("calibration line " + std::to_string(lineno) + ": unknown parameter '" + f[1] + "'");
    }
    const auto i = static_cast<std::size_t>(it - kParamNames.begin());
    if (seen[i]) throw DataError("calibration: parameter '" + f[1] + "' given twice");
    seen[i] = true;
    cal.omega[i] = to_double(f[2], lineno);
    cal.psi[i] = {to_double(f[3], lineno), to_double(f[4], lineno)};
  }
  for (std::size_t i = 0; i < kParamCount; ++i) {
    if (!seen[i]) throw DataError("calibration: missing parameter '" + std::string(kParamNames[i]) + "'");
  }
  return cal;
}

Calibration Calibration::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("calibration: cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

std::string Calibration::to_text() const {
  std::ostringstream os;
  os.precision(10);
  os << "# name omega psi_re psi_im\n";
  for (std::size_t i = 0; i < kParamCount; ++i) {
    os << "param " << kParamNames[i] << ' ' << omega[i] << ' ' << psi[i].real() << ' ' << psi[i].imag()
       << '\n';
  }
  return os.str();
}

ArticulatorMap Calibration::map_for(std::span<const int> consonant_articulators) const {
  ArticulatorMap map;
  map.omega = omega;
  map.psi = psi;
  for (int idx : consonant_articulators) {
    if (idx < 1 || idx > static_cast<int>(kParamCount)) {
      throw DataError("articulator index out of 1..7: " + std::to_string(idx));
    }
    map.consonantal[static_cast<std::size_t>(idx - 1)] = true;
  }
  return map;
}

ParamVector clamp(const ParamVector& p) {
  ParamVector out{};
  for (std::size_t i = 0; i < kParamCount; ++i) out[i] = std::clamp(p[i], -kParamLimit, kParamLimit);
  return out;
}

ParamVector compose_unclamped(std::complex<double> z_v, std::complex<double> z_c, const ArticulatorMap& map) {
  ParamVector p{};
  for (std::size_t i = 0; i < kParamCount; ++i) {
    const auto z = map.consonantal[i] ? z_c : z_v;
    p[i] = map.omega[i] + (map.psi[i] * std::conj(z)).real();
  }
  return p;
}

ParamTrack compose_parameters(std::span<const std::complex<double>> z_v,
                              std::span<const std::complex<double>> z_c, const ArticulatorMap& map) {
  if (z_v.size() != z_c.size()) {
    throw CompositionError("compose: vocalic stream has " + std::to_string(z_v.size()) +
                           " frames, consonantal stream " + std::to_string(z_c.size()));
  }
  ParamTrack track;
  track.frames.reserve(z_v.size());
  for (std::size_t t = 0; t < z_v.size(); ++t) {
    track.frames.push_back(clamp(compose_unclamped(z_v[t], z_c[t], map)));
  }
  return track;
}

}  // namespace vcv::articulator
