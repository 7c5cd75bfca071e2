#include <iostream>
#include <map>

#include "CLI11.hpp"
#include "vcv/runner.hpp"

int main(int argc, char** argv) {
  using namespace vcv::cli;

  CLI::App app{"vcvsynth: VCV/CV syllable synthesis from polar-plane gestures"};
  RunConfig config;
  std::string corpus = "vcv75";
  app.add_option("--corpus", corpus, "vcv75, cv8 or single")
      ->check(CLI::IsMember({"vcv75", "cv8", "single"}));
  app.add_option("--syllable", config.syllable, "syllable for --corpus single, e.g. ydu or du");
  app.add_option("--frames", config.t_frames, "frames per transition arc (10 ms each)");
  app.add_option("--calibration", config.calibration_path, "calibration file (default: <assets>/calibration.txt)");
  app.add_option("--model", config.model_path, "articulatory model tables (default: <assets>/model_tables.txt)");
  app.add_option("--inventory", config.inventory_path, "phoneme inventory file (default: built in)");
  app.add_option("--out", config.out_dir, "output directory")->required();
  app.add_option("--k-vowel", config.k_vowel, "curvature constant of the vowel arc");
  app.add_option("--k-consonant", config.k_consonant, "curvature constant of the consonant arcs");
  app.add_flag("--straight", config.straight, "straight-line gestures (K = 1000)");
  app.add_option("-j,--jobs", config.jobs, "worker threads (0: all cores)");
  bool no_audio = false;
  app.add_flag("--no-audio", no_audio, "skip WAV rendering");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kConfigError;
  }

  static const std::map<std::string, Corpus> corpora = {
      {"vcv75", Corpus::vcv75}, {"cv8", Corpus::cv8}, {"single", Corpus::single}};
  config.corpus = corpora.at(corpus);
  config.write_audio = !no_audio;

  try {
    const auto summary = run_experiment(config);
    std::size_t a = 0, b = 0, p = 0;
    for (const auto& t : summary.transitions) {
      if (t.kind == vcv::analysis::TransitionKind::a) ++a;
      else if (t.kind == vcv::analysis::TransitionKind::b) ++b;
      else ++p;
    }
    std::cout << summary.results.size() << " items, " << summary.artifacts.size() + 1 << " files in "
              << config.out_dir << '\n';
    if (!summary.transitions.empty()) std::cout << "transitions: A " << a << ", B " << b << ", perturbation " << p << '\n';
    for (const auto& f : summary.fits) {
      if (f.formant != vcv::analysis::Formant::f2) continue;
      std::cout << "locus " << f.consonant << " dt=" << f.delta_t_ms << ": slope " << f.slope << ", intercept "
                << f.intercept << ", R2 " << f.r_squared << '\n';
    }
    return kOk;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const AssetError& e) {
    std::cerr << "asset error: " << e.what() << '\n';
    return kAssetError;
  } catch (const std::exception& e) {
    std::cerr << "pipeline error: " << e.what() << '\n';
    return kPipelineError;
  }
}
