// Copyright 2026 The sf3d Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)
//
// sf3d command-line front end.
//
//   sf3d simulate --out DIR [--clean-dir DIR] [--seeds 0..9] ...
//   sf3d extract  --in DIR [--tpd 1d|3d] [--out FILE] ...
//   sf3d evaluate --in DIR [--out FILE] ...
//   sf3d render   --features FILE [--block SF] --out FILE.ppm ...
//
// Exit codes: 0 success, 1 usage error, 2 invalid data or config,
// 3 internal error.

#include <algorithm>
#include <cinttypes>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <limits>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sf3d/sf3d.hpp"

namespace fs = std::filesystem;

namespace {

std::vector<std::uint64_t> parse_seeds(const std::string& spec) {
  std::vector<std::uint64_t> seeds;
  const std::size_t dots = spec.find("..");
  try {
    if (dots != std::string::npos) {
      const std::uint64_t lo = std::stoull(spec.substr(0, dots));
      const std::uint64_t hi = std::stoull(spec.substr(dots + 2));
      sf3d::check(lo <= hi, "seeds: range start exceeds end: " + spec);
      sf3d::check(hi - lo < 1000000, "seeds: range too large: " + spec);
      for (std::uint64_t s = lo; s <= hi; ++s) seeds.push_back(s);
    } else {
      std::stringstream ss(spec);
      std::string tok;
      while (std::getline(ss, tok, ',')) seeds.push_back(std::stoull(tok));
    }
  } catch (const std::invalid_argument&) {
    throw sf3d::Error("seeds: expected N, N..M, or N,M,...: got '" + spec + "'");
  } catch (const std::out_of_range&) {
    throw sf3d::Error("seeds: value out of range: '" + spec + "'");
  }
  sf3d::check(!seeds.empty(), "seeds: empty seed list");
  return seeds;
}

std::string scenario_dir_name(std::uint64_t seed) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "scenario_%06" PRIu64, seed);
  return buf;
}

std::vector<fs::path> list_scenario_dirs(const std::string& root) {
  sf3d::check(fs::is_directory(root), "not a directory: " + root);
  if (fs::exists(fs::path(root) / "scenario.json")) return {fs::path(root)};
  std::vector<fs::path> dirs;
  for (const auto& e : fs::directory_iterator(root)) {
    if (e.is_directory() && fs::exists(e.path() / "scenario.json"))
      dirs.push_back(e.path());
  }
  std::sort(dirs.begin(), dirs.end());
  sf3d::check(!dirs.empty(), "no scenario directories under: " + root);
  return dirs;
}

sf3d::Waveform load_mono(const std::string& path, int expected_rate,
                         double max_seconds) {
  const std::vector<sf3d::Waveform> chans = sf3d::read_wav(path);
  sf3d::Waveform w = chans.front();
  sf3d::check(w.sample_rate == expected_rate,
              "sample rate of " + path + " is " +
                  std::to_string(w.sample_rate) + ", config wants " +
                  std::to_string(expected_rate));
  if (max_seconds > 0) {
    const std::size_t cap =
        static_cast<std::size_t>(max_seconds * expected_rate);
    if (w.samples.size() > cap) w.samples.resize(cap);
  }
  sf3d::check(!w.samples.empty(), "empty audio file: " + path);
  return w;
}

struct SimulateArgs {
  std::string out_dir;
  std::string clean_dir;
  std::string seeds_spec = "0";
  std::vector<std::uint64_t> seed_flags;
  int max_order = -1;
};

int run_simulate(const SimulateArgs& args, const sf3d::RunConfig& cfg) {
  cfg.validate();
  std::vector<std::uint64_t> seeds = args.seed_flags;
  if (seeds.empty()) seeds = parse_seeds(args.seeds_spec);

  // Validate and preload all dry material before creating any output.
  std::vector<std::string> clean_names;
  std::vector<sf3d::Waveform> clean_bank;
  if (!args.clean_dir.empty()) {
    sf3d::check(fs::is_directory(args.clean_dir),
                "clean dir is not a directory: " + args.clean_dir);
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(args.clean_dir))
      if (e.is_regular_file() && e.path().extension() == ".wav")
        files.push_back(e.path());
    std::sort(files.begin(), files.end());
    sf3d::check(!files.empty(), "no .wav files in: " + args.clean_dir);
    for (const auto& f : files) {
      clean_names.push_back(f.filename().string());
      clean_bank.push_back(
          load_mono(f.string(), cfg.sample_rate, cfg.max_clean_seconds));
    }
  }

  for (const std::uint64_t seed : seeds) {
    sf3d::Scenario sc = sf3d::sample_scenario(seed, cfg.ranges);
    sc.delay_interp = cfg.fractional_delay;

    std::vector<sf3d::Waveform> cleans(sc.sources.size());
    if (clean_bank.empty()) {
      const double secs = cfg.max_clean_seconds > 0 ? cfg.max_clean_seconds : 4.0;
      for (std::size_t i = 0; i < sc.sources.size(); ++i) {
        const std::uint64_t s = seed * 1000003ull + i * 7919ull + 1;
        cleans[i] = sf3d::synth_speech(s, secs, cfg.sample_rate);
        sc.sources[i].clean_name = "synth:" + std::to_string(s);
      }
    } else {
      sf3d::Rng pick(seed ^ 0xA5A5A5A5DEADBEEFull);
      std::vector<std::size_t> used;
      for (std::size_t i = 0; i < sc.sources.size(); ++i) {
        std::size_t idx = 0;
        for (int attempt = 0; attempt < 32; ++attempt) {
          idx = static_cast<std::size_t>(pick.uniform_int(
              0, static_cast<int>(clean_bank.size()) - 1));
          if (std::find(used.begin(), used.end(), idx) == used.end()) break;
        }
        used.push_back(idx);
        cleans[i] = clean_bank[idx];
        sc.sources[i].clean_name = clean_names[idx];
      }
    }

    const sf3d::RenderedScene scene =
        sf3d::render_scenario(sc, cleans, args.max_order);

    const fs::path dir = fs::path(args.out_dir) / scenario_dir_name(seed);
    fs::create_directories(dir);
    const std::string tag =
        "sf3d seed=" + std::to_string(seed) + " config=" + config_digest(cfg);
    sf3d::write_scenario((dir / "scenario.json").string(), sc);
    sf3d::write_wav((dir / "mixture.wav").string(), scene.mixture,
                    sf3d::WavFormat::kFloat32, tag);
    for (std::size_t s = 0; s < scene.images.size(); ++s)
      sf3d::write_wav((dir / ("ref_" + std::to_string(s) + ".wav")).string(),
                      scene.images[s], sf3d::WavFormat::kFloat32, tag);
    std::printf("%s t60=%.3f sir=%.2f sources=%zu samples=%zu\n",
                scenario_dir_name(seed).c_str(), sc.room.t60, sc.sir_db,
                sc.sources.size(), scene.mixture.front().samples.size());
  }
  return 0;
}

struct ExtractArgs {
  std::string in_dir;
  std::string out_file;  // only valid for a single scenario
};

sf3d::FeatureMatrix extract_features(const sf3d::Scenario& sc,
                                     const std::vector<sf3d::Waveform>& mixture,
                                     const sf3d::RunConfig& cfg) {
  sf3d::check(mixture.size() == sc.array.size(),
              "mixture channel count != scenario microphone count");
  std::vector<sf3d::ComplexSpectrogram> specs;
  specs.reserve(mixture.size());
  for (const auto& ch : mixture) {
    sf3d::check(ch.sample_rate == cfg.sample_rate,
                "mixture sample rate disagrees with the config");
    specs.push_back(sf3d::stft(ch, cfg.stft_cfg));
  }

  const sf3d::IpdMatrix ipd_mat = sf3d::ipd(specs, cfg.pairs);
  const sf3d::SourceLocation& loc = sc.target().location;
  sf3d::TpdMatrix tpd;
  if (cfg.tpd_mode == "3d") {
    sf3d::check(std::isfinite(loc.elevation) && std::isfinite(loc.distance),
                "scenario lacks elevation/distance for 3d TPD; "
                "extract with --tpd 1d or re-simulate");
    tpd = sf3d::tpd_3d(loc, cfg.pairs, sc.array,
                       static_cast<int>(cfg.stft_cfg.bins()), cfg.sample_rate,
                       cfg.sound_speed);
  } else {
    tpd = sf3d::tpd_1d(loc.azimuth, cfg.pairs, sc.array,
                       static_cast<int>(cfg.stft_cfg.bins()), cfg.sample_rate,
                       cfg.sound_speed);
  }
  const sf3d::SfMatrix sf = sf3d::spatial_feature(ipd_mat, tpd);

  if (cfg.preset == "all-in-one") {
    const sf3d::MelFilterbank fb = sf3d::make_mel_filterbank(
        cfg.n_mels, cfg.stft_cfg.bins(), cfg.sample_rate);
    return sf3d::assemble_all_in_one(sf3d::lfb(specs[0], fb, cfg.floor_eps), sf);
  }
  return sf3d::assemble_pipelined(sf3d::lps(specs[0], cfg.floor_eps), ipd_mat,
                                  sf);
}

int run_extract(const ExtractArgs& args, const sf3d::RunConfig& cfg) {
  cfg.validate();
  const std::vector<fs::path> dirs = list_scenario_dirs(args.in_dir);
  sf3d::check(args.out_file.empty() || dirs.size() == 1,
              "--out needs a single scenario directory as --in");
  const std::string config_line = config_to_json(cfg).dump();
  for (const auto& dir : dirs) {
    const sf3d::Scenario sc =
        sf3d::read_scenario((dir / "scenario.json").string());
    const std::vector<sf3d::Waveform> mixture =
        sf3d::read_wav((dir / "mixture.wav").string());
    const sf3d::FeatureMatrix fm = extract_features(sc, mixture, cfg);
    const std::string out =
        args.out_file.empty()
            ? (dir / ("features_" + cfg.tpd_mode + ".sff")).string()
            : args.out_file;
    sf3d::write_features(out, fm, config_digest(cfg), config_line);
    std::printf("%s rows=%zu cols=%zu layout=%s\n", out.c_str(), fm.frames(),
                fm.dim(), layout_name(fm.layout).c_str());
  }
  return 0;
}

struct EvaluateArgs {
  std::string in_dir;
  std::string out_file;
};

int run_evaluate(const EvaluateArgs& args, const sf3d::RunConfig& cfg) {
  cfg.validate();
  const std::vector<fs::path> dirs = list_scenario_dirs(args.in_dir);
  std::vector<sf3d::EvalRow> rows;
  for (const auto& dir : dirs) {
    const sf3d::Scenario sc =
        sf3d::read_scenario((dir / "scenario.json").string());
    const std::vector<sf3d::Waveform> mixture =
        sf3d::read_wav((dir / "mixture.wav").string());
    std::vector<std::vector<sf3d::Waveform>> images;
    for (std::size_t s = 0; s < sc.sources.size(); ++s) {
      const fs::path ref = dir / ("ref_" + std::to_string(s) + ".wav");
      sf3d::check(fs::exists(ref), "missing reference file: " + ref.string());
      images.push_back(sf3d::read_wav(ref.string()));
    }
    rows.push_back(sf3d::evaluate_scenario(sc, mixture, images, cfg,
                                           dir.filename().string()));
  }
  const std::string table = sf3d::format_results(rows, cfg);
  if (args.out_file.empty()) {
    std::fputs(table.c_str(), stdout);
  } else {
    sf3d::detail::write_file(args.out_file, table);
    const sf3d::EvalSummary s = sf3d::summarize(rows);
    std::printf(
        "wrote %s: %zu rows, median si-snr mix/irm/sf1d/sf3d = "
        "%.2f/%.2f/%.2f/%.2f dB\n",
        args.out_file.c_str(), s.rows, s.median_si_snr_mix, s.median_si_snr_irm,
        s.median_si_snr_sf1d, s.median_si_snr_sf3d);
  }
  return 0;
}

struct RenderArgs {
  std::string features_file;
  std::string block = "SF";
  std::string out_file;
  double vmin = std::numeric_limits<double>::quiet_NaN();
  double vmax = std::numeric_limits<double>::quiet_NaN();
};

int run_render(const RenderArgs& args) {
  const sf3d::FeatureFile ff = sf3d::read_features(args.features_file);
  const sf3d::MatF block = ff.features.slice_block(args.block);
  sf3d::MatD m(block.rows(), block.cols());
  for (std::size_t i = 0; i < block.size(); ++i)
    m.data()[i] = static_cast<double>(block.data()[i]);
  sf3d::write_heatmap_ppm(args.out_file, m, args.vmin, args.vmax,
                          "sf3d block=" + args.block +
                              " layout=" + layout_name(ff.features.layout) +
                              " digest=" + ff.digest);
  std::printf("%s %zux%zu\n", args.out_file.c_str(), m.rows(), m.cols());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sf3d: 3D spatial-feature toolkit"};
  app.require_subcommand(1);

  std::string preset_flag, config_flag, tpd_flag, pairs_flag;
  auto add_config_flags = [&](CLI::App* sub) {
    sub->add_option("--preset", preset_flag,
                    "pipelined | all-in-one | close-azimuth");
    sub->add_option("--config", config_flag,
                    "JSON config file (SF3D_CONFIG env var also honored)");
    sub->add_option("--tpd", tpd_flag, "TPD mode: 1d | 3d");
    sub->add_option("--pairs", pairs_flag, "microphone pairs, e.g. 0,7;1,6");
  };

  SimulateArgs sim_args;
  CLI::App* sim = app.add_subcommand(
      "simulate", "sample scenarios and render mixtures + references");
  sim->add_option("--out", sim_args.out_dir, "output run directory")->required();
  sim->add_option("--clean-dir", sim_args.clean_dir,
                  "directory of dry .wav files (default: synthetic speech)");
  sim->add_option("--seeds", sim_args.seeds_spec, "N, N..M, or N,M,... (default 0)");
  sim->add_option("--seed", sim_args.seed_flags, "individual seed (repeatable)");
  sim->add_option("--max-order", sim_args.max_order,
                  "image-source reflection order cap (-1 = auto)");
  add_config_flags(sim);

  ExtractArgs ext_args;
  CLI::App* ext = app.add_subcommand(
      "extract", "compute feature matrices for simulated scenarios");
  ext->add_option("--in", ext_args.in_dir,
                  "run directory or single scenario directory")
      ->required();
  ext->add_option("--out", ext_args.out_file,
                  "output file (single scenario only; default: "
                  "<scenario>/features_<tpd>.sff)");
  add_config_flags(ext);

  EvaluateArgs eval_args;
  CLI::App* eva = app.add_subcommand(
      "evaluate", "oracle-mask separation metrics over a run directory");
  eva->add_option("--in", eval_args.in_dir, "run directory")->required();
  eva->add_option("--out", eval_args.out_file,
                  "output TSV (default: stdout)");
  add_config_flags(eva);

  RenderArgs ren_args;
  CLI::App* ren = app.add_subcommand("render", "render a feature block to PPM");
  ren->add_option("--features", ren_args.features_file, "feature file")
      ->required();
  ren->add_option("--block", ren_args.block, "block name (default SF)");
  ren->add_option("--out", ren_args.out_file, "output .ppm path")->required();
  ren->add_option("--vmin", ren_args.vmin, "color scale minimum");
  ren->add_option("--vmax", ren_args.vmax, "color scale maximum");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    sf3d::RunConfig cfg = sf3d::resolve_config(preset_flag, config_flag);
    if (!tpd_flag.empty()) cfg.tpd_mode = tpd_flag;
    if (!pairs_flag.empty()) cfg.pairs = sf3d::pairs_from_string(pairs_flag);
    if (sim->parsed()) return run_simulate(sim_args, cfg);
    if (ext->parsed()) return run_extract(ext_args, cfg);
    if (eva->parsed()) return run_evaluate(eval_args, cfg);
    if (ren->parsed()) return run_render(ren_args);
    std::fprintf(stderr, "no subcommand\n");
    return 1;
  } catch (const sf3d::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "internal error: %s\n", e.what());
    return 3;
  }
}
