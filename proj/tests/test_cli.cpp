#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "vcv/runner.hpp"

using namespace vcv::cli;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

fs::path scratch(const std::string& name) {
  const auto p = fs::temp_directory_path() / ("vcv_test_" + name);
  fs::remove_all(p);
  return p;
}

}  // namespace

TEST_CASE("sha256: standard test vectors") {
  CHECK(sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("corpus: 75 VCVs on a 5 x 3 x 5 grid with contextual g") {
  const auto inv = vcv::planner::Inventory::defaults();
  const auto items = vcv75_items(inv);
  REQUIRE(items.size() == 75);
  std::set<std::string> ids;
  for (const auto& it : items) {
    ids.insert(it.id);
    CHECK_FALSE(it.cv);
    if (it.consonant == "gp" || it.consonant == "gv") {
      CHECK(it.consonant == (inv.at(it.v2).front ? "gp" : "gv"));
    }
  }
  CHECK(ids.size() == 75);
  CHECK(ids.count("ydu"));
  CHECK(ids.count("2ga"));
  const auto ygu = std::find_if(items.begin(), items.end(), [](const CorpusItem& i) { return i.id == "ygu"; });
  CHECK(ygu->consonant == "gv");
  const auto ugy = std::find_if(items.begin(), items.end(), [](const CorpusItem& i) { return i.id == "ugy"; });
  CHECK(ugy->consonant == "gp");
}

TEST_CASE("corpus: eight-vowel CV set") {
  const auto inv = vcv::planner::Inventory::defaults();
  const auto items = cv8_items(inv);
  REQUIRE(items.size() == 24);
  std::set<std::string> consonants;
  for (const auto& it : items) {
    CHECK(it.cv);
    consonants.insert(it.consonant);
  }
  CHECK(consonants == std::set<std::string>{"b", "d", "gp", "gv"});
  CHECK(cv_vowels().size() == 8);
}

TEST_CASE("corpus: single syllables") {
  const auto inv = vcv::planner::Inventory::defaults();
  const auto vcv = single_item(inv, "ydu");
  CHECK(vcv.v1 == "y");
  CHECK(vcv.consonant == "d");
  CHECK(vcv.v2 == "u");
  CHECK_FALSE(vcv.cv);
  const auto cv = single_item(inv, "du");
  CHECK(cv.cv);
  CHECK(cv.v2 == "u");
  CHECK(single_item(inv, "ago").consonant == "gv");
  CHECK(single_item(inv, "gi").consonant == "gp");
  CHECK_THROWS_AS(single_item(inv, "yxu"), ConfigError);
  CHECK_THROWS_AS(single_item(inv, "yd"), ConfigError);
  CHECK_THROWS_AS(single_item(inv, "yud"), ConfigError);
  CHECK_THROWS_AS(single_item(inv, ""), ConfigError);
}

TEST_CASE("config: K overrides") {
  RunConfig c;
  CHECK(c.plan_options().k_vowel == 30.0);
  CHECK(c.plan_options().k_consonant == 10.0);
  c.straight = true;
  CHECK(c.plan_options().k_vowel == 1000.0);
  CHECK(c.plan_options().k_consonant == 1000.0);
  c.t_frames = 0;
  CHECK_THROWS_AS(c.plan_options(), ConfigError);
}

TEST_CASE("assets: missing files name the paths tried") {
  RunConfig c;
  c.calibration_path = "/nonexistent/cal.txt";
  try {
    Assets::resolve(c);
    FAIL("expected an asset error");
  } catch (const AssetError& e) {
    CHECK(std::string(e.what()).find("/nonexistent/cal.txt") != std::string::npos);
  }
  ::setenv(kAssetRootEnv, "/nonexistent-assets", 1);
  CHECK(asset_root() == "/nonexistent-assets");
  CHECK_THROWS_AS(Assets::resolve(RunConfig{}), AssetError);
  ::unsetenv(kAssetRootEnv);
  CHECK_NOTHROW(Assets::resolve(RunConfig{}));
}

TEST_CASE("run: single CV item writes a complete manifest") {
  RunConfig c;
  c.corpus = Corpus::single;
  c.syllable = "du";
  c.out_dir = scratch("single").string();
  const auto summary = run_experiment(c);
  REQUIRE(summary.results.size() == 1);

  const auto manifest = nlohmann::json::parse(slurp(fs::path(c.out_dir) / "manifest.json"));
  std::set<std::string> listed;
  for (const auto& f : manifest["files"]) {
    const std::string path = f["path"];
    listed.insert(path);
    CHECK(sha256_hex(slurp(fs::path(c.out_dir) / path)) == f["sha256"]);
  }
  for (const auto& entry : fs::directory_iterator(c.out_dir)) {
    const auto name = entry.path().filename().string();
    if (name != "manifest.json") CHECK(listed.count(name) == 1);
  }
  CHECK(listed.count("du.wav"));
  CHECK(listed.count("du_formants.csv"));
  CHECK(listed.count("du_spectrogram.csv"));
  CHECK(manifest["config_hash"].get<std::string>().size() == 64);

  const auto& item = manifest["items"][0];
  const auto& red = item["reduced_onset"];
  CHECK(red["rho"].get<double>() == doctest::Approx(0.5 * red["vowel_rho"].get<double>()));
  CHECK(red["theta"].get<double>() == doctest::Approx(red["vowel_theta"].get<double>()));
  fs::remove_all(c.out_dir);
}

TEST_CASE("run: unwritable output directory is a config error") {
  const auto blocker = scratch("blocker");
  std::ofstream(blocker.string()) << "not a directory";
  RunConfig c;
  c.corpus = Corpus::single;
  c.syllable = "ydu";
  c.out_dir = (blocker / "out").string();
  CHECK_THROWS_AS(run_experiment(c), ConfigError);
  fs::remove(blocker);
  c.out_dir.clear();
  CHECK_THROWS_AS(run_experiment(c), ConfigError);
}
