#include <cmath>
#include <numbers>

#include "doctest.h"
#include "vcv/articulator.hpp"
#include "vcv/error.hpp"
#include "vcv/planner.hpp"

using namespace vcv::articulator;
using vcv::planner::Inventory;

namespace {

Calibration sample_calibration() {
  return Calibration::parse(
      "param Jaw -0.5 1.0 0.5\n"
      "param Body 0.2 -2.0 1.0\n"
      "param Dorsum 0.0 0.5 -1.5\n"
      "param Tip 0.1 0.0 2.0\n"
      "param LipP -0.3 1.5 0.0\n"
      "param LipH 0.4 -1.0 -1.0\n"
      "param Hy 0.0 0.25 0.25\n");
}

// Three-line model: one line per region so each behaviour is visible.
const char* kTinyModel =
    "version 1\n"
    "area_floor 0.001\n"
    "line larynx 1.0 1.0 2.0 1.0 0.0 0.1\n"
    "line velar 2.0 1.5 1.5 2.0 0.0 0.0\n"
    "line lips 0.5 1.0 1.0 1.0 0.25 0.0\n"
    "basis Jaw 0.1 0.2 0.3\n"
    "basis Body 0 -0.5 0\n"
    "basis Dorsum 0 0 0\n"
    "basis Tip 0 0 0\n"
    "basis LipP 0 0 0\n"
    "basis LipH 0 0 0.5\n"
    "basis Hy 0.2 0 0\n";

std::string data_path(const char* name) { return std::string(VCV_DATA_DIR) + "/" + name; }

}  // namespace

TEST_CASE("compose: zero input gives the offsets") {
  const auto map = sample_calibration().map_for(std::vector<int>{1, 2, 6});
  const auto p = compose_unclamped({0.0, 0.0}, {0.0, 0.0}, map);
  for (std::size_t i = 0; i < kParamCount; ++i) CHECK(p[i] == map.omega[i]);
}

TEST_CASE("compose: real part of psi times conj z is a x + b y") {
  const auto cal = sample_calibration();
  const auto map = cal.map_for(std::vector<int>{});
  const std::complex<double> z{0.3, -0.7};
  const auto p = compose_unclamped(z, z, map);
  for (std::size_t i = 0; i < kParamCount; ++i) {
    const double expect = cal.omega[i] + cal.psi[i].real() * 0.3 + cal.psi[i].imag() * -0.7;
    CHECK(p[i] == doctest::Approx(expect).epsilon(1e-14));
  }
}

TEST_CASE("compose: affine in each stream") {
  const auto map = sample_calibration().map_for(std::vector<int>{1, 2, 3, 4});
  const std::complex<double> a{0.2, 0.1};
  const std::complex<double> b{-0.4, 0.3};
  const std::complex<double> c{0.5, -0.2};
  const auto pa = compose_unclamped(a, c, map);
  const auto pb = compose_unclamped(b, c, map);
  const auto pab = compose_unclamped(a + b, c, map);
  const auto p0 = compose_unclamped(0.0, c, map);
  for (std::size_t i = 0; i < kParamCount; ++i) {
    CHECK(pab[i] - p0[i] == doctest::Approx((pa[i] - p0[i]) + (pb[i] - p0[i])).epsilon(1e-12));
  }
}

TEST_CASE("compose: articulator set selects the consonantal stream") {
  const auto map = sample_calibration().map_for(std::vector<int>{1, 2, 6});
  CHECK(map.consonantal == Selection{true, true, false, false, false, true, false});
  CHECK(map.vocalic() == Selection{false, false, true, true, true, false, true});
  const std::complex<double> zv{0.6, 0.0};
  const std::complex<double> zc{0.0, 1.1};
  const auto mixed = compose_unclamped(zv, zc, map);
  const auto vowel_only = compose_unclamped(zv, zv, map);
  const auto cons_only = compose_unclamped(zc, zc, map);
  for (std::size_t i = 0; i < kParamCount; ++i) {
    CHECK(mixed[i] == (map.consonantal[i] ? cons_only[i] : vowel_only[i]));
  }
}

TEST_CASE("compose: static streams give static parameters, clamped to the limit") {
  auto cal = sample_calibration();
  cal.omega[0] = 5.0;
  const auto map = cal.map_for(std::vector<int>{1});
  const std::vector<std::complex<double>> zv(8, {0.7, 0.2});
  const std::vector<std::complex<double>> zc(8, {1.2, -0.3});
  const auto track = compose_parameters(zv, zc, map);
  REQUIRE(track.frames.size() == 8);
  for (const auto& f : track.frames) {
    CHECK(f == track.frames.front());
    for (double v : f) CHECK(std::abs(v) <= kParamLimit);
  }
  CHECK(track.frames.front()[0] == kParamLimit);
  CHECK(clamp(ParamVector{-4, 4, 0, 0, 0, 0, 0}) == ParamVector{-3, 3, 0, 0, 0, 0, 0});
  CHECK_THROWS_AS(compose_parameters(zv, std::vector<std::complex<double>>(7), map), vcv::CompositionError);
}

TEST_CASE("calibration: round trip and malformed files") {
  const auto cal = sample_calibration();
  const auto again = Calibration::parse(cal.to_text());
  for (std::size_t i = 0; i < kParamCount; ++i) {
    CHECK(again.omega[i] == doctest::Approx(cal.omega[i]));
    CHECK(again.psi[i].real() == doctest::Approx(cal.psi[i].real()));
    CHECK(again.psi[i].imag() == doctest::Approx(cal.psi[i].imag()));
  }
  CHECK_THROWS_AS(Calibration::parse("param Jaw 0 0 0\n"), vcv::DataError);
  CHECK_THROWS_AS(Calibration::parse("param Neck 0 0 0\n"), vcv::DataError);
  CHECK_THROWS_AS(Calibration::parse("param Jaw 0 0\n"), vcv::DataError);
  CHECK_THROWS_AS(Calibration::parse(cal.to_text() + "param Jaw 0 0 0\n"), vcv::DataError);
  CHECK_THROWS_AS(Calibration::load("/nonexistent/calibration.txt"), vcv::DataError);
  CHECK_THROWS(cal.map_for(std::vector<int>{0}));
  CHECK_THROWS(cal.map_for(std::vector<int>{8}));
}

TEST_CASE("model: power-law areas, floor and length scaling") {
  const auto m = ArticulatoryModel::parse(kTinyModel);
  REQUIRE(m.grid_size() == 3);
  ParamVector p{};
  auto a = m.area(p);
  CHECK(a.sections[0].area_cm2 == doctest::Approx(2.0 * 1.0));
  CHECK(a.sections[1].area_cm2 == doctest::Approx(1.5 * 1.5 * 1.5));
  CHECK(a.sections[2].area_cm2 == doctest::Approx(1.0));
  CHECK(a.total_length() == doctest::Approx(3.5));

  p[1] = 3.0;  // Body closes the velar line: 1.5 - 1.5 = 0
  a = m.area(p);
  CHECK(a.sections[1].area_cm2 == doctest::Approx(0.001));
  CHECK(a.min_index() == 1);
  p[1] = 10.0;  // clamped to 3 before use
  CHECK(m.area(p).sections[1].area_cm2 == doctest::Approx(0.001));
  CHECK(m.sagittal_distances(p)[1] == doctest::Approx(0.0));

  ParamVector q{};
  q[4] = 2.0;  // LipP lengthens the lips by 25 % per unit
  q[6] = -1.0;  // Hy shortens the larynx by 10 % per unit
  a = m.area(q);
  CHECK(a.sections[2].length_cm == doctest::Approx(0.5 * 1.5));
  CHECK(a.sections[0].length_cm == doctest::Approx(1.0 * 0.9));
  CHECK(a.sections[0].area_cm2 == doctest::Approx(2.0 * (1.0 - 0.2)));

  CHECK(m.region_begin("velar") == 1);
  CHECK(m.region_end("velar") == 2);
}

TEST_CASE("model: malformed tables") {
  CHECK_THROWS_AS(ArticulatoryModel::parse("area_floor 0.001\n"), vcv::DataError);
  CHECK_THROWS_AS(ArticulatoryModel::parse("version 2\n"), vcv::DataError);
  std::string missing = kTinyModel;
  missing.erase(missing.find("basis Hy"));
  CHECK_THROWS_AS(ArticulatoryModel::parse(missing), vcv::DataError);
  std::string short_basis = kTinyModel;
  short_basis.replace(short_basis.find("basis Hy 0.2 0 0"), 16, "basis Hy 0.2 0");
  CHECK_THROWS_AS(ArticulatoryModel::parse(short_basis), vcv::DataError);
  std::string bad_alpha = kTinyModel;
  bad_alpha.replace(bad_alpha.find("1.0 1.0 2.0 1.0"), 15, "1.0 1.0 0.0 1.0");
  CHECK_THROWS_AS(ArticulatoryModel::parse(bad_alpha), vcv::DataError);
  CHECK_THROWS_AS(ArticulatoryModel::parse(std::string(kTinyModel) + "wedge 1\n"), vcv::DataError);
}

TEST_CASE("resample: length and volume are conserved") {
  AreaFunction a;
  a.sections = {{1.0, 2.0}, {0.5, 0.3}, {2.0, 4.0}, {0.7, 1.1}, {1.3, 0.05}};
  double volume = 0.0;
  for (const auto& s : a.sections) volume += s.length_cm * s.area_cm2;
  for (std::size_t n : {1u, 3u, 4u, 17u, 44u}) {
    const auto r = resample(a, n);
    REQUIRE(r.sections.size() == n);
    double v = 0.0;
    for (const auto& s : r.sections) {
      v += s.length_cm * s.area_cm2;
      CHECK(s.length_cm == doctest::Approx(a.total_length() / static_cast<double>(n)));
    }
    CHECK(r.total_length() == doctest::Approx(a.total_length()));
    CHECK(v == doctest::Approx(volume));
  }
  const auto same = resample(a, a.sections.size());
  for (std::size_t k = 0; k < a.sections.size(); ++k) CHECK(same.sections[k].area_cm2 == a.sections[k].area_cm2);
  CHECK_THROWS(resample(a, 0));
}

TEST_CASE("shipped assets: grid layout and neutral tract") {
  const auto m = ArticulatoryModel::load(data_path("model_tables.txt"));
  CHECK(m.grid_size() == 29);
  CHECK(m.region_begin("larynx") == 0);
  CHECK(m.region_begin("alveolar") < m.region_begin("lips"));
  CHECK(m.region_end("lips") == 29);
  const auto a = m.area(ParamVector{});
  CHECK(a.min_area() > kClosureThreshold);
  CHECK(a.total_length() > 14.0);
  CHECK(a.total_length() < 20.0);
  CHECK_NOTHROW(Calibration::load(data_path("calibration.txt")));
}

TEST_CASE("tracks: consonant closures with the shipped calibration") {
  const auto inv = Inventory::defaults();
  const auto cal = Calibration::load(data_path("calibration.txt"));
  const auto model = ArticulatoryModel::load(data_path("model_tables.txt"));

  struct Case {
    const char *v1, *c, *v2, *region;
  };
  for (const auto& k : {Case{"y", "d", "u", "alveolar"}, Case{"a", "d", "a", "alveolar"}, Case{"y", "b", "u", "lips"},
                        Case{"a", "gv", "u", "velar"}, Case{"u", "gp", "y", "palatal"}}) {
    CAPTURE(std::string(k.v1) + k.c + k.v2);
    const auto plan = vcv::planner::plan_syllable(inv.at(k.v1).target, inv.at(k.c).target, inv.at(k.v2).target);
    const auto tracks = build_tracks(plan, inv.at(k.c).articulators, cal, model);
    const int center = plan.onset_center_frame();
    const auto& at_center = tracks.areas[static_cast<std::size_t>(center)];
    CHECK(at_center.min_area() < kClosureThreshold);
    const auto idx = at_center.min_index();
    CHECK(idx >= model.region_begin(k.region));
    CHECK(idx < model.region_end(k.region));
    // Vowels at both ends are open.
    CHECK(tracks.areas.front().min_area() > kClosureThreshold);
    CHECK(tracks.areas.back().min_area() > kClosureThreshold);
    const auto [c0, c1] = tracks.closure_interval();
    CHECK(c0 <= center);
    CHECK(c1 > center);
  }
}

TEST_CASE("tracks: the Body parameter follows the consonant stream in ybu") {
  const auto inv = Inventory::defaults();
  const auto cal = Calibration::load(data_path("calibration.txt"));
  const auto model = ArticulatoryModel::load(data_path("model_tables.txt"));
  const auto plan = vcv::planner::plan_syllable(inv.at("y").target, inv.at("b").target, inv.at("u").target);
  const auto tracks = build_tracks(plan, inv.at("b").articulators, cal, model);
  const auto body = static_cast<std::size_t>(Param::body);
  REQUIRE(tracks.map.consonantal[body]);
  for (std::size_t t = 0; t < plan.frame_count(); ++t) {
    const double expect = cal.omega[body] + (cal.psi[body] * std::conj(plan.consonant_stream[t])).real();
    CHECK(tracks.params.frames[t][body] == doctest::Approx(std::clamp(expect, -3.0, 3.0)));
  }
}

TEST_CASE("tracks: every VCV closes once, around the onset center") {
  const auto inv = Inventory::defaults();
  const auto cal = Calibration::load(data_path("calibration.txt"));
  const auto model = ArticulatoryModel::load(data_path("model_tables.txt"));
  const char* vowels[] = {"y", "2", "a", "o", "u"};
  for (const char* c : {"b", "d", "g"}) {
    for (const char* v1 : vowels) {
      for (const char* v2 : vowels) {
        CAPTURE(std::string(v1) + c + v2);
        const auto& cons = inv.resolve_consonant(c, v2);
        const auto plan = vcv::planner::plan_syllable(inv.at(v1).target, cons.target, inv.at(v2).target);
        const auto tracks = build_tracks(plan, cons.articulators, cal, model);
        int runs = 0;
        for (std::size_t t = 0; t < tracks.closure.size(); ++t) {
          if (tracks.closure[t] && (t == 0 || !tracks.closure[t - 1])) ++runs;
        }
        CHECK(runs == 1);

        // The floor makes the minimum a plateau; use the middle of the run.
        const int center = plan.onset_center_frame();
        const auto [c0, c1] = tracks.closure_interval();
        CHECK(c0 <= center);
        CHECK(c1 > center);
        CHECK(std::abs((c0 + c1 - 1) / 2.0 - center) <= 2.0);

        for (const auto& a : tracks.areas) {
          CHECK(a.total_length() >= 12.0);
          CHECK(a.total_length() <= 22.0);
        }
      }
    }
  }
}
