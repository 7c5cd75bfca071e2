#pragma once

#include <optional>
#include <string>
#include <vector>

#include "vcv/analysis.hpp"
#include "vcv/error.hpp"

namespace vcv::cli {

enum class Corpus { vcv75, cv8, single };

/// Exit codes of the command-line runner.
enum ExitCode : int { kOk = 0, kConfigError = 2, kAssetError = 3, kPipelineError = 4 };

class ConfigError : public Error {
public:
  using Error::Error;
};

class AssetError : public Error {
public:
  using Error::Error;
};

/// Environment variable overriding the directory holding the data assets.
inline constexpr const char* kAssetRootEnv = "VCVSYNTH_ASSET_DIR";

struct RunConfig {
  Corpus corpus = Corpus::vcv75;
  std::string syllable;  // corpus == single
  int t_frames = 16;
  double k_vowel = 30.0;
  double k_consonant = 10.0;
  bool straight = false;  // K = 1000 on every arc
  std::string calibration_path;  // empty: <assets>/calibration.txt
  std::string model_path;        // empty: <assets>/model_tables.txt
  std::string inventory_path;    // empty: built-in inventory
  std::string out_dir;
  unsigned jobs = 0;             // 0: hardware concurrency
  bool write_audio = true;

  /// Plan options with the K overrides applied.
  planner::PlanOptions plan_options() const;
};

struct Assets {
  planner::Inventory inventory;
  articulator::Calibration calibration;
  articulator::ArticulatoryModel model;
  std::string calibration_path;
  std::string model_path;
  std::string inventory_path;  // empty for the built-in table

  /// Resolves and loads every asset; failures raise AssetError naming the
  /// paths that were tried.
  static Assets resolve(const RunConfig& config);
};

/// Asset directory: $VCVSYNTH_ASSET_DIR if set, else the compiled-in default.
std::string asset_root();

struct CorpusItem {
  std::string id;         // e.g. "ydu", "du"
  std::string v1;         // vowel label; for CV the full vowel whose reduced copy starts the plan
  std::string consonant;  // resolved label (b, d, gp, gv)
  std::string v2;
  bool cv = false;
};

std::vector<CorpusItem> vcv75_items(const planner::Inventory& inventory);
std::vector<CorpusItem> cv8_items(const planner::Inventory& inventory);
/// Parses "ydu" (VCV) or "du" (CV).
CorpusItem single_item(const planner::Inventory& inventory, const std::string& syllable);

/// The five VCV vowels and the eight CV vowels, in corpus order.
std::vector<std::string> vcv_vowels();
std::vector<std::string> cv_vowels();

struct ItemResult {
  CorpusItem item;
  planner::SyllablePlan plan;
  articulator::Tracks tracks;
  acoustics::FormantTrack formants;
  std::optional<acoustics::RenderedSyllable> audio;
  analysis::FormantSample sample;
  std::optional<analysis::TransitionClass> transition;  // VCV only
};

ItemResult run_item(const CorpusItem& item, const Assets& assets, const RunConfig& config);

/// Runs every item on a worker pool; results come back in item order.
std::vector<ItemResult> run_items(const std::vector<CorpusItem>& items, const Assets& assets,
                                  const RunConfig& config);

struct Artifact {
  std::string path;  // relative to the output directory
  std::string sha256;
};

struct RunSummary {
  std::vector<ItemResult> results;
  std::vector<analysis::LocusFit> fits;
  std::vector<analysis::TransitionClass> transitions;
  std::vector<analysis::LindblomRow> lindblom;
  std::vector<Artifact> artifacts;
};

/// Full experiment: builds the corpus, runs the pipeline, writes every
/// artifact plus manifest.json into config.out_dir.
RunSummary run_experiment(const RunConfig& config);

std::string sha256_hex(const std::string& bytes);

}  // namespace vcv::cli
