#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "vcv/error.hpp"
#include "vcv/planner.hpp"

namespace vcv::planner {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Positions from the published corpus; the four extra CV vowels (i, e, E, O)
// sit on the front (pi..11pi/6) and back (pi/2..pi) branches, evenly spaced
// in angle between their published neighbours.
constexpr std::string_view kDefaultInventory = R"(# label  class      rho   theta     extra
y        vowel      0.7   11pi/6    front
2        vowel      0.3   11pi/6    front
a        vowel      0.8   pi        back
o        vowel      0.8   pi/2      back
u        vowel      1.0   pi/3      back
i        vowel      0.8   5pi/3     front
e        vowel      0.7   3pi/2     front
E        vowel      0.7   4pi/3     front
O        vowel      0.8   3pi/4     back
b        consonant  1.2   pi/3      1,2,6
d        consonant  1.2   23pi/16   1,2,3,4
gp       consonant  1.1   23pi/12   1,2,3,4   g:front
gv       consonant  1.2   pi/3      1,2,3,4   g:back
)";

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

double parse_number(std::string_view s, std::string_view what) {
  double value = 0.0;
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, value);
  if (ec != std::errc{} || ptr != end) {
    throw InventoryError("inventory: malformed " + std::string(what) + " '" + std::string(s) + "'");
  }
  return value;
}

// Accepts plain radians ("1.047") or multiples of pi ("pi", "-pi/2", "23pi/16").
double parse_angle(std::string_view s) {
  const auto pos = s.find("pi");
  if (pos == std::string_view::npos) return parse_number(s, "angle");
  std::string_view num = s.substr(0, pos);
  std::string_view rest = s.substr(pos + 2);
  double coef = 1.0;
  if (num == "-") {
    coef = -1.0;
  } else if (!num.empty()) {
    coef = parse_number(num, "angle");
  }
  double den = 1.0;
  if (!rest.empty()) {
    if (rest.front() != '/') throw InventoryError("inventory: malformed angle '" + std::string(s) + "'");
    den = parse_number(rest.substr(1), "angle");
    if (den == 0.0) throw InventoryError("inventory: zero denominator in angle '" + std::string(s) + "'");
  }
  return coef * std::numbers::pi / den;
}

double normalize_angle(double theta) {
  double t = std::fmod(theta, kTwoPi);
  if (t < 0.0) t += kTwoPi;
  if (t >= kTwoPi) t = 0.0;
  return t;
}

std::vector<int> parse_articulators(std::string_view s) {
  std::vector<int> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    const auto comma = s.find(',', start);
    const auto field = s.substr(start, comma == std::string_view::npos ? s.npos : comma - start);
    const double v = parse_number(field, "articulator index");
    const int idx = static_cast<int>(v);
    if (idx != v || idx < 1 || idx > 7) {
      throw InventoryError("inventory: articulator index out of 1..7: '" + std::string(field) + "'");
    }
    out.push_back(idx);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::string format_angle(double theta) {
  std::ostringstream os;
  os.precision(17);
  os << theta;
  return os.str();
}

}  // namespace

Inventory Inventory::defaults() { return parse(kDefaultInventory); }

void Inventory::add(Phoneme phoneme) {
  auto& t = phoneme.target;
  if (t.label.empty()) throw InventoryError("inventory: empty label");
  if (contains(t.label)) throw InventoryError("inventory: duplicate label '" + t.label + "'");
  if (!(t.rho >= 0.0)) throw InventoryError("inventory: negative radius for '" + t.label + "'");
  if (phoneme.kind == PhonemeClass::vowel && t.rho > 1.0) {
    throw InventoryError("inventory: vowel '" + t.label + "' lies outside the unit circle");
  }
  if (phoneme.kind == PhonemeClass::consonant) {
    if (!(t.rho > 1.0)) {
      throw InventoryError("inventory: consonant '" + t.label + "' must lie outside the unit circle");
    }
    if (phoneme.articulators.empty()) {
      throw InventoryError("inventory: consonant '" + t.label + "' has no articulator set");
    }
  }
  t.theta = normalize_angle(t.theta);
  phonemes_.push_back(std::move(phoneme));
}

Inventory Inventory::parse(std::string_view text) {
  Inventory inv;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (trim(line).empty()) continue;

    std::istringstream fields(line);
    std::vector<std::string> f;
    for (std::string tok; fields >> tok;) f.push_back(tok);
    if (f.size() < 4) {
      throw InventoryError("inventory line " + std::to_string(lineno) + ": expected label class rho theta");
    }
    Phoneme p;
    p.target.label = f[0];
    p.target.rho = parse_number(f[2], "radius");
    p.target.theta = parse_angle(f[3]);
    if (f[1] == "vowel") {
      p.kind = PhonemeClass::vowel;
      if (f.size() != 5 || (f[4] != "front" && f[4] != "back")) {
        throw InventoryError("inventory line " + std::to_string(lineno) + ": vowel needs front|back");
      }
      p.front = f[4] == "front";
    } else if (f[1] == "consonant") {
      p.kind = PhonemeClass::consonant;
      if (f.size() < 5 || f.size() > 6) {
        throw InventoryError("inventory line " + std::to_string(lineno) +
                             ": consonant needs an articulator set and optional family:context");
      }
      p.articulators = parse_articulators(f[4]);
      if (f.size() == 6) {
        const auto colon = f[5].find(':');
        if (colon == std::string::npos) {
          throw InventoryError("inventory line " + std::to_string(lineno) + ": expected family:front|back");
        }
        p.allophone_of = f[5].substr(0, colon);
        const auto ctx = f[5].substr(colon + 1);
        if (ctx != "front" && ctx != "back") {
          throw InventoryError("inventory line " + std::to_string(lineno) + ": context must be front|back");
        }
        p.front = ctx == "front";
      }
    } else {
      throw InventoryError("inventory line " + std::to_string(lineno) + ": unknown class '" + f[1] + "'");
    }
    inv.add(std::move(p));
  }
  return inv;
}

Inventory Inventory::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InventoryError("inventory: cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

bool Inventory::contains(std::string_view label) const {
  return std::any_of(phonemes_.begin(), phonemes_.end(),
                     [&](const Phoneme& p) { return p.target.label == label; });
}

const Phoneme& Inventory::at(std::string_view label) const {
  for (const auto& p : phonemes_) {
    if (p.target.label == label) return p;
  }
  throw InventoryError("inventory: unknown phoneme '" + std::string(label) + "'");
}

const Phoneme& Inventory::resolve_consonant(std::string_view label, std::string_view context_vowel) const {
  if (contains(label)) {
    const auto& p = at(label);
    if (p.kind != PhonemeClass::consonant) {
      throw InventoryError("inventory: '" + std::string(label) + "' is not a consonant");
    }
    return p;
  }
  const auto& v = at(context_vowel);
  if (v.kind != PhonemeClass::vowel) {
    throw InventoryError("inventory: context '" + std::string(context_vowel) + "' is not a vowel");
  }
  for (const auto& p : phonemes_) {
    if (p.allophone_of == label && p.front == v.front) return p;
  }
  throw InventoryError("inventory: unknown phoneme '" + std::string(label) + "'");
}

std::vector<std::string> Inventory::tokenize(std::string_view syllable) const {
  std::vector<std::string> labels;
  for (const auto& p : phonemes_) {
    labels.push_back(p.target.label);
    if (!p.allophone_of.empty()) labels.push_back(p.allophone_of);
  }
  std::sort(labels.begin(), labels.end(),
            [](const std::string& a, const std::string& b) { return a.size() > b.size(); });

  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos < syllable.size()) {
    bool matched = false;
    for (const auto& l : labels) {
      if (syllable.substr(pos, l.size()) == l) {
        out.push_back(l);
        pos += l.size();
        matched = true;
        break;
      }
    }
    if (!matched) {
      throw InventoryError("inventory: cannot parse '" + std::string(syllable) + "' at position " +
                           std::to_string(pos));
    }
  }
  return out;
}

std::string Inventory::to_text() const {
  std::ostringstream os;
  os << "# label  class      rho   theta     extra\n";
  for (const auto& p : phonemes_) {
    os << p.target.label << ' ' << (p.kind == PhonemeClass::vowel ? "vowel" : "consonant") << ' '
       << format_angle(p.target.rho) << ' ' << format_angle(p.target.theta) << ' ';
    if (p.kind == PhonemeClass::vowel) {
      os << (p.front ? "front" : "back");
    } else {
      for (std::size_t i = 0; i < p.articulators.size(); ++i) {
        os << (i ? "," : "") << p.articulators[i];
      }
      if (!p.allophone_of.empty()) os << ' ' << p.allophone_of << ':' << (p.front ? "front" : "back");
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace vcv::planner
