#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include "vcv/articulator.hpp"
#include "vcv/error.hpp"

namespace vcv::articulator {

namespace {

double number(const std::string& s, int lineno) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(v)) {
    throw DataError("model tables line " + std::to_string(lineno) + ": bad number '" + s + "'");
  }
  return v;
}

}  // namespace

double AreaFunction::total_length() const {
  return std::accumulate(sections.begin(), sections.end(), 0.0,
                         [](double acc, const TubeSection& s) { return acc + s.length_cm; });
}

double AreaFunction::min_area() const { return sections.empty() ? 0.0 : sections[min_index()].area_cm2; }

std::size_t AreaFunction::min_index() const {
  const auto it = std::min_element(sections.begin(), sections.end(),
                                   [](const TubeSection& a, const TubeSection& b) { return a.area_cm2 < b.area_cm2; });
  return static_cast<std::size_t>(it - sections.begin());
}

AreaFunction resample(const AreaFunction& area, std::size_t count) {
  if (count == 0) throw ParameterError("resample: section count must be positive");
  if (area.sections.empty()) throw ParameterError("resample: empty area function");
  if (count == area.sections.size()) return area;

  const double total = area.total_length();
  const double step = total / static_cast<double>(count);
  AreaFunction out;
  out.frame = area.frame;
  out.sections.reserve(count);

  // Walk both partitions; each output section averages the input areas
  // weighted by overlap length.
  std::size_t j = 0;
  double in_begin = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    const double lo = step * static_cast<double>(i);
    const double hi = (i + 1 == count) ? total : lo + step;
    double volume = 0.0;
    while (j < area.sections.size()) {
      const double in_end = in_begin + area.sections[j].length_cm;
      const double overlap = std::min(hi, in_end) - std::max(lo, in_begin);
      if (overlap > 0.0) volume += overlap * area.sections[j].area_cm2;
      if (in_end > hi) break;
      in_begin = in_end;
      ++j;
    }
    out.sections.push_back({hi - lo, volume / (hi - lo)});
  }
  return out;
}

ArticulatoryModel ArticulatoryModel::parse(std::string_view text) {
  ArticulatoryModel m;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  bool have_version = false;
  std::array<bool, kParamCount> have_basis{};
  std::vector<std::pair<std::size_t, std::vector<double>>> pending;

  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::vector<std::string> f;
    for (std::string tok; fields >> tok;) f.push_back(tok);
    if (f.empty()) continue;

    const auto where = "model tables line " + std::to_string(lineno);
    if (f[0] == "version") {
      if (f.size() != 2 || f[1] != "1") throw DataError(where + ": unsupported version");
      have_version = true;
    } else if (f[0] == "area_floor") {
      if (f.size() != 2) throw DataError(where + ": expected 'area_floor <cm2>'");
      m.area_floor_ = number(f[1], lineno);
      if (!(m.area_floor_ > 0.0)) throw DataError(where + ": area_floor must be positive");
    } else if (f[0] == "line") {
      if (f.size() != 8) {
        throw DataError(where + ": expected 'line region length mean alpha beta dlen_lipp dlen_hy'");
      }
      GridLine g;
      g.region = f[1];
      g.length_cm = number(f[2], lineno);
      g.mean_distance_cm = number(f[3], lineno);
      g.alpha = number(f[4], lineno);
      g.beta = number(f[5], lineno);
      g.length_lip_protrusion = number(f[6], lineno);
      g.length_hyoid = number(f[7], lineno);
      if (!(g.length_cm > 0.0) || !(g.alpha > 0.0) || !(g.beta > 0.0)) {
        throw DataError(where + ": length, alpha and beta must be positive");
      }
      m.lines_.push_back(std::move(g));
    } else if (f[0] == "basis") {
      if (f.size() < 3) throw DataError(where + ": expected 'basis <param> values...'");
      const auto it = std::find(kParamNames.begin(), kParamNames.end(), f[1]);
      if (it == kParamNames.end()) throw DataError(where + ": unknown parameter '" + f[1] + "'");
      const auto idx = static_cast<std::size_t>(it - kParamNames.begin());
      if (have_basis[idx]) throw DataError(where + ": basis '" + f[1] + "' given twice");
      have_basis[idx] = true;
      std::vector<double> v;
      for (std::size_t k = 2; k < f.size(); ++k) v.push_back(number(f[k], lineno));
      pending.emplace_back(idx, std::move(v));
    } else {
      throw DataError(where + ": unknown record '" + f[0] + "'");
    }
  }

  if (!have_version) throw DataError("model tables: missing version record");
  if (m.lines_.empty()) throw DataError("model tables: no grid lines");
  for (std::size_t i = 0; i < kParamCount; ++i) {
    if (!have_basis[i]) throw DataError("model tables: missing basis for " + std::string(kParamNames[i]));
  }
  for (auto& [idx, v] : pending) {
    if (v.size() != m.lines_.size()) {
      throw DataError("model tables: basis " + std::string(kParamNames[idx]) + " has " +
                      std::to_string(v.size()) + " values, grid has " + std::to_string(m.lines_.size()));
    }
    m.basis_[idx] = std::move(v);
  }
  return m;
}

ArticulatoryModel ArticulatoryModel::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("model tables: cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

std::vector<double> ArticulatoryModel::sagittal_distances(const ParamVector& p_in) const {
  const auto p = clamp(p_in);
  std::vector<double> d(lines_.size());
  for (std::size_t j = 0; j < lines_.size(); ++j) {
    double v = lines_[j].mean_distance_cm;
    for (std::size_t i = 0; i < kParamCount; ++i) v += p[i] * basis_[i][j];
    d[j] = v;
  }
  return d;
}

AreaFunction ArticulatoryModel::area(const ParamVector& p, std::size_t sections) const {
  const auto q = clamp(p);
  const auto d = sagittal_distances(q);
  const double protrusion = q[static_cast<std::size_t>(Param::lip_protrusion)];
  const double hyoid = q[static_cast<std::size_t>(Param::hyoid)];

  AreaFunction a;
  a.sections.reserve(lines_.size());
  for (std::size_t j = 0; j < lines_.size(); ++j) {
    const auto& g = lines_[j];
    const double area = d[j] > 0.0 ? g.alpha * std::pow(d[j], g.beta) : 0.0;
    const double length =
        g.length_cm * (1.0 + g.length_lip_protrusion * protrusion) * (1.0 + g.length_hyoid * hyoid);
    a.sections.push_back({length, std::max(area, area_floor_)});
  }
  if (sections != 0 && sections != a.sections.size()) return resample(a, sections);
  return a;
}

std::size_t ArticulatoryModel::region_begin(std::string_view region) const {
  for (std::size_t j = 0; j < lines_.size(); ++j) {
    if (lines_[j].region == region) return j;
  }
  return std::string_view::npos;
}

std::size_t ArticulatoryModel::region_end(std::string_view region) const {
  std::size_t end = std::string_view::npos;
  for (std::size_t j = 0; j < lines_.size(); ++j) {
    if (lines_[j].region == region) end = j + 1;
  }
  return end;
}

}  // namespace vcv::articulator
