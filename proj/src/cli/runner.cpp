#include "vcv/runner.hpp"

#include <openssl/evp.h>

#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include "json.hpp"

#include "vcv/error.hpp"

#ifndef VCV_DATA_DIR
#define VCV_DATA_DIR "data"
#endif

namespace fs = std::filesystem;

namespace vcv::cli {

namespace {

std::string fmt(double v, int decimals = 3) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw AssetError("cannot read '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

// Writes through a temporary file in the same directory and renames it into
// place, so readers never see a partial artifact.
void write_atomic(const fs::path& path, const std::string& bytes) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open '" + tmp.string() + "' for writing");
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw Error("write failed for '" + tmp.string() + "'");
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) throw Error("cannot rename '" + tmp.string() + "': " + ec.message());
}

std::string resolve_path(const std::string& explicit_path, const std::string& root, const char* name,
                         std::vector<std::string>& tried) {
  if (!explicit_path.empty()) {
    tried.push_back(explicit_path);
    return fs::exists(explicit_path) ? explicit_path : std::string{};
  }
  const auto candidate = (fs::path(root) / name).string();
  tried.push_back(candidate);
  return fs::exists(candidate) ? candidate : std::string{};
}

std::string params_csv(const articulator::Tracks& tracks) {
  std::ostringstream os;
  os << "frame";
  for (const auto& name : articulator::kParamNames) os << ',' << name;
  os << ",min_area,closure\n";
  for (std::size_t t = 0; t < tracks.params.frames.size(); ++t) {
    os << t;
    for (double p : tracks.params.frames[t]) os << ',' << fmt(p, 5);
    os << ',' << fmt(tracks.areas[t].min_area(), 5) << ',' << (tracks.closure[t] ? 1 : 0) << '\n';
  }
  return os.str();
}

std::string area_csv(const articulator::Tracks& tracks) {
  std::ostringstream os;
  os << "frame,section,length_cm,area_cm2\n";
  for (std::size_t t = 0; t < tracks.areas.size(); ++t) {
    const auto& sections = tracks.areas[t].sections;
    for (std::size_t k = 0; k < sections.size(); ++k) {
      os << t << ',' << k << ',' << fmt(sections[k].length_cm, 5) << ',' << fmt(sections[k].area_cm2, 5) << '\n';
    }
  }
  return os.str();
}

std::string spectrogram_csv(const acoustics::Spectrogram& s) {
  std::ostringstream os;
  os << "time_ms";
  for (std::size_t k = 0; k < s.bins(); ++k) os << ',' << fmt(static_cast<double>(k) * s.bin_hz, 2);
  os << '\n';
  for (std::size_t i = 0; i < s.db.size(); ++i) {
    os << fmt(s.times_ms[i], 2);
    for (double v : s.db[i]) os << ',' << fmt(v, 2);
    os << '\n';
  }
  return os.str();
}

const char* corpus_name(Corpus c) {
  switch (c) {
    case Corpus::vcv75:
      return "vcv75";
    case Corpus::cv8:
      return "cv8";
    case Corpus::single:
      return "single";
  }
  return "?";
}

}  // namespace

planner::PlanOptions RunConfig::plan_options() const {
  if (t_frames <= 0) throw ConfigError("--frames must be positive");
  if (!(k_vowel > 0.0) || !(k_consonant > 0.0)) throw ConfigError("K values must be positive");
  planner::PlanOptions o;
  o.t_frames = t_frames;
  o.k_vowel = straight ? 1000.0 : k_vowel;
  o.k_consonant = straight ? 1000.0 : k_consonant;
  return o;
}

std::string asset_root() {
  if (const char* env = std::getenv(kAssetRootEnv); env != nullptr && *env != '\0') return env;
  return VCV_DATA_DIR;
}

Assets Assets::resolve(const RunConfig& config) {
  const auto root = asset_root();
  std::vector<std::string> tried;
  Assets a;
  a.calibration_path = resolve_path(config.calibration_path, root, "calibration.txt", tried);
  a.model_path = resolve_path(config.model_path, root, "model_tables.txt", tried);
  if (a.calibration_path.empty() || a.model_path.empty()) {
    std::string msg = "missing asset; looked for:";
    for (const auto& t : tried) msg += "\n  " + t + (fs::exists(t) ? " (found)" : " (not found)");
    msg += "\nset " + std::string(kAssetRootEnv) + " to override the asset directory";
    throw AssetError(msg);
  }
  try {
    a.calibration = articulator::Calibration::load(a.calibration_path);
    a.model = articulator::ArticulatoryModel::load(a.model_path);
    if (config.inventory_path.empty()) {
      a.inventory = planner::Inventory::defaults();
    } else {
      a.inventory_path = config.inventory_path;
      a.inventory = planner::Inventory::load(config.inventory_path);
    }
  } catch (const AssetError&) {
    throw;
  } catch (const Error& e) {
    throw AssetError(e.what());
  }
  return a;
}

std::vector<std::string> vcv_vowels() { return {"y", "2", "a", "o", "u"}; }
std::vector<std::string> cv_vowels() { return {"u", "o", "O", "a", "E", "e", "i", "y"}; }

namespace {

const std::vector<std::string> kConsonants = {"b", "d", "g"};

CorpusItem make_item(const planner::Inventory& inv, const std::string& v1, const std::string& c,
                     const std::string& v2, bool cv) {
  CorpusItem item;
  item.v1 = v1;
  item.v2 = v2;
  item.cv = cv;
  item.consonant = inv.resolve_consonant(c, v2).target.label;
  item.id = cv ? c + v2 : v1 + c + v2;
  return item;
}

}  // namespace

std::vector<CorpusItem> vcv75_items(const planner::Inventory& inventory) {
  std::vector<CorpusItem> items;
  for (const auto& c : kConsonants) {
    for (const auto& v1 : vcv_vowels()) {
      for (const auto& v2 : vcv_vowels()) items.push_back(make_item(inventory, v1, c, v2, false));
    }
  }
  return items;
}

std::vector<CorpusItem> cv8_items(const planner::Inventory& inventory) {
  std::vector<CorpusItem> items;
  for (const auto& c : kConsonants) {
    for (const auto& v : cv_vowels()) items.push_back(make_item(inventory, v, c, v, true));
  }
  return items;
}

CorpusItem single_item(const planner::Inventory& inventory, const std::string& syllable) {
  std::vector<std::string> tokens;
  try {
    tokens = inventory.tokenize(syllable);
  } catch (const InventoryError& e) {
    throw ConfigError(std::string("--syllable: ") + e.what());
  }
  auto is_vowel = [&](const std::string& l) {
    return inventory.contains(l) && inventory.at(l).kind == planner::PhonemeClass::vowel;
  };
  try {
    if (tokens.size() == 3 && is_vowel(tokens[0]) && !is_vowel(tokens[1]) && is_vowel(tokens[2])) {
      auto item = make_item(inventory, tokens[0], tokens[1], tokens[2], false);
      item.id = syllable;
      return item;
    }
    if (tokens.size() == 2 && !is_vowel(tokens[0]) && is_vowel(tokens[1])) {
      auto item = make_item(inventory, tokens[1], tokens[0], tokens[1], true);
      item.id = syllable;
      return item;
    }
  } catch (const InventoryError& e) {
    throw ConfigError(std::string("--syllable: ") + e.what());
  }
  throw ConfigError("--syllable: expected VCV or CV, got '" + syllable + "'");
}

ItemResult run_item(const CorpusItem& item, const Assets& assets, const RunConfig& config) {
  const auto options = config.plan_options();
  const auto& inv = assets.inventory;
  const auto& c = inv.at(item.consonant);

  ItemResult r;
  r.item = item;
  r.plan = item.cv ? planner::plan_cv(c.target, inv.at(item.v2).target, options)
                   : planner::plan_syllable(inv.at(item.v1).target, c.target, inv.at(item.v2).target, options);
  r.tracks = articulator::build_tracks(r.plan, c.articulators, assets.calibration, assets.model);
  r.formants = acoustics::formant_track(r.tracks.areas, r.tracks.closure, r.plan.frame_ms);

  const int center = r.plan.onset_center_frame();
  analysis::SamplingOptions sampling;
  sampling.zero_side = item.cv ? analysis::ZeroSide::after : analysis::ZeroSide::before;
  r.sample = analysis::sample_formants(r.formants, center, sampling);
  r.sample.id = item.id;
  r.sample.consonant = item.consonant;
  r.sample.v1 = item.cv ? planner::reduced_vowel(inv.at(item.v2).target).label : item.v1;
  r.sample.v2 = item.v2;
  if (!item.cv) {
    r.transition = analysis::classify_transition(r.formants, center);
    r.transition->id = item.id;
  }
  if (config.write_audio) {
    r.audio = acoustics::render(r.tracks.areas, r.tracks.closure, center, r.plan.frame_ms);
  }
  return r;
}

std::vector<ItemResult> run_items(const std::vector<CorpusItem>& items, const Assets& assets,
                                  const RunConfig& config) {
  std::vector<std::optional<ItemResult>> slots(items.size());
  std::vector<std::exception_ptr> errors(items.size());
  std::atomic<std::size_t> next{0};

  unsigned workers = config.jobs != 0 ? config.jobs : std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(items.size(), 1)));

  auto work = [&] {
    for (std::size_t i = next++; i < items.size(); i = next++) {
      try {
        slots[i] = run_item(items[i], assets, config);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();

  std::vector<ItemResult> out;
  out.reserve(items.size());
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (errors[i]) {
      try {
        std::rethrow_exception(errors[i]);
      } catch (const std::exception& e) {
        throw Error("item '" + items[i].id + "': " + e.what());
      }
    }
    out.push_back(std::move(*slots[i]));
  }
  return out;
}

std::string sha256_hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw Error("sha256: digest failed");
  }
  static const char* hex = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(hex[digest[i] >> 4]);
    out.push_back(hex[digest[i] & 0xf]);
  }
  return out;
}

RunSummary run_experiment(const RunConfig& config) {
  if (config.out_dir.empty()) throw ConfigError("--out is required");
  {
    std::error_code ec;
    fs::create_directories(config.out_dir, ec);
    const auto probe = fs::path(config.out_dir) / ".vcvsynth_probe";
    std::ofstream out(probe);
    if (ec || !out) throw ConfigError("output directory '" + config.out_dir + "' is not writable");
    out.close();
    fs::remove(probe, ec);
  }
  const auto options = config.plan_options();
  const auto assets = Assets::resolve(config);

  std::vector<CorpusItem> items;
  try {
    switch (config.corpus) {
      case Corpus::vcv75:
        items = vcv75_items(assets.inventory);
        break;
      case Corpus::cv8:
        items = cv8_items(assets.inventory);
        break;
      case Corpus::single:
        if (config.syllable.empty()) throw ConfigError("--syllable is required with --corpus single");
        items = {single_item(assets.inventory, config.syllable)};
        break;
    }
  } catch (const InventoryError& e) {
    throw AssetError(std::string("inventory lacks a corpus phoneme: ") + e.what());
  }

  RunSummary summary;
  summary.results = run_items(items, assets, config);

  const fs::path out_dir(config.out_dir);
  auto emit = [&](const std::string& name, const std::string& bytes) {
    write_atomic(out_dir / name, bytes);
    summary.artifacts.push_back({name, sha256_hex(bytes)});
  };

  std::vector<analysis::FormantSample> samples;
  for (const auto& r : summary.results) {
    samples.push_back(r.sample);
    if (r.transition) summary.transitions.push_back(*r.transition);
    if (r.audio) {
      const auto wav = acoustics::encode_wav(r.audio->samples, r.audio->sample_rate);
      emit(r.item.id + ".wav", std::string(wav.begin(), wav.end()));
    }
    emit(r.item.id + "_formants.csv", analysis::formant_track_csv(r.formants));
    emit(r.item.id + "_params.csv", params_csv(r.tracks));
    if (config.corpus == Corpus::single) {
      emit(r.item.id + "_areas.csv", area_csv(r.tracks));
      if (r.audio) {
        emit(r.item.id + "_spectrogram.csv",
             spectrogram_csv(acoustics::spectrogram(r.audio->samples, r.audio->sample_rate)));
      }
    }
  }

  const bool any_vcv = !summary.transitions.empty();
  if (any_vcv) {
    emit("transitions.csv", analysis::transitions_csv(summary.transitions));
    std::vector<std::string> expected;
    if (config.corpus == Corpus::vcv75) {
      for (const auto& it : items) expected.push_back(it.id);
    }
    summary.lindblom = analysis::lindblom_dataset(samples, expected);
    emit("lindblom.csv", analysis::lindblom_csv(summary.lindblom));
  }

  if (config.corpus != Corpus::single) {
    std::vector<analysis::LocusFit> fits;
    for (const std::string c : {"b", "d", "gp", "gv"}) {
      for (int dt : {0, 40}) {
        emit("locus_" + c + "_" + std::to_string(dt) + ".csv", analysis::locus_csv(samples, c, dt));
        std::size_t n = 0;
        for (const auto& s : samples) n += s.consonant == c ? 1 : 0;
        if (n >= 3) {
          fits.push_back(analysis::fit_locus(samples, c, dt, analysis::Formant::f2));
          fits.push_back(analysis::fit_locus(samples, c, dt, analysis::Formant::f3));
        }
      }
    }
    summary.fits = fits;
    emit("locus_fits.csv", analysis::locus_fits_csv(fits));
  }

  nlohmann::ordered_json cfg;
  cfg["corpus"] = corpus_name(config.corpus);
  cfg["syllable"] = config.syllable;
  cfg["t_frames"] = options.t_frames;
  cfg["padding_frames"] = options.padding_frames;
  cfg["frame_ms"] = options.frame_ms;
  cfg["k_vowel"] = options.k_vowel;
  cfg["k_consonant"] = options.k_consonant;
  cfg["straight"] = config.straight;
  cfg["audio"] = config.write_audio;
  cfg["calibration_sha256"] = sha256_hex(read_file(assets.calibration_path));
  cfg["model_sha256"] = sha256_hex(read_file(assets.model_path));
  cfg["inventory_sha256"] = sha256_hex(assets.inventory.to_text());

  nlohmann::ordered_json manifest;
  manifest["config"] = cfg;
  manifest["config_hash"] = sha256_hex(cfg.dump());
  manifest["items"] = nlohmann::ordered_json::array();
  for (const auto& r : summary.results) {
    nlohmann::ordered_json item;
    item["id"] = r.item.id;
    item["consonant"] = r.item.consonant;
    item["v2"] = r.item.v2;
    item["frames"] = r.plan.frame_count();
    item["onset_center_frame"] = r.plan.onset_center_frame();
    const auto [c0, c1] = r.tracks.closure_interval();
    item["closure_frames"] = {c0, c1};
    if (r.item.cv) {
      const auto& v = assets.inventory.at(r.item.v2).target;
      item["reduced_onset"] = {{"rho", r.plan.v1.rho}, {"theta", r.plan.v1.theta}, {"vowel_rho", v.rho},
                               {"vowel_theta", v.theta}};
    } else {
      item["v1"] = r.item.v1;
    }
    manifest["items"].push_back(item);
  }
  manifest["files"] = nlohmann::ordered_json::array();
  for (const auto& a : summary.artifacts) manifest["files"].push_back({{"path", a.path}, {"sha256", a.sha256}});
  write_atomic(out_dir / "manifest.json", manifest.dump(2) + "\n");
  return summary;
}

}  // namespace vcv::cli
