// Copyright 2026 The sf3d Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef SF3D_CONFIG_HPP_
#define SF3D_CONFIG_HPP_

#include <cstdint>
#include <cstdlib>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "sf3d/common.hpp"
#include "sf3d/geometry.hpp"
#include "sf3d/scenario.hpp"
#include "sf3d/stft.hpp"
#include "sf3d/wav.hpp"

// One config object drives simulation, extraction, and evaluation. Presets
// pick the analysis geometry; a JSON file and CLI flags override fields.
// digest() fingerprints every field that changes feature values, and is
// stamped into feature files so stale extractions are detectable.

namespace sf3d {

struct RunConfig {
  std::string preset = "pipelined";  // pipelined | all-in-one | close-azimuth
  StftConfig stft_cfg = StftConfig::pipelined();
  int sample_rate = 16000;
  std::vector<MicPair> pairs = default_pairs();
  std::string tpd_mode = "3d";  // 1d | 3d
  double sound_speed = 343.0;
  double floor_eps = 1e-12;
  int n_mels = 40;
  double sf_sharpness = 10.0;
  double sf_threshold = 0.5;
  std::string fractional_delay = "nearest";  // nearest | sinc8
  double max_clean_seconds = 4.0;            // 0 = use full files
  SamplingRanges ranges;

  void validate() const {
    stft_cfg.validate();
    check(sample_rate > 0, "config: sample_rate must be positive");
    check(!pairs.empty(), "config: pair list is empty");
    check(tpd_mode == "1d" || tpd_mode == "3d",
          "config: tpd_mode must be '1d' or '3d'");
    check(sound_speed > 0, "config: sound_speed must be positive");
    check(floor_eps > 0, "config: floor_eps must be positive");
    check(n_mels > 0, "config: n_mels must be positive");
    check(fractional_delay == "nearest" || fractional_delay == "sinc8",
          "config: fractional_delay must be 'nearest' or 'sinc8'");
    check(max_clean_seconds >= 0, "config: max_clean_seconds must be >= 0");
  }
};

inline std::string pairs_to_string(const std::vector<MicPair>& pairs) {
  std::string s;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    if (i) s += ";";
    s += std::to_string(pairs[i].m1) + "," + std::to_string(pairs[i].m2);
  }
  return s;
}

// "m1,m2;m1,m2;..." -> pair list.
inline std::vector<MicPair> pairs_from_string(const std::string& s) {
  std::vector<MicPair> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ';')) {
    const std::size_t comma = tok.find(',');
    check(comma != std::string::npos,
          "pairs: expected 'm1,m2' entries separated by ';', got '" + tok + "'");
    try {
      out.push_back(MicPair{std::stoi(tok.substr(0, comma)),
                            std::stoi(tok.substr(comma + 1))});
    } catch (const std::exception&) {
      throw Error("pairs: malformed entry '" + tok + "'");
    }
  }
  check(!out.empty(), "pairs: empty pair list");
  return out;
}

inline void apply_preset(RunConfig& cfg, const std::string& preset) {
  if (preset == "pipelined") {
    cfg.stft_cfg = StftConfig::pipelined();
    cfg.ranges = SamplingRanges::defaults();
  } else if (preset == "all-in-one") {
    cfg.stft_cfg = StftConfig::all_in_one();
    cfg.ranges = SamplingRanges::defaults();
  } else if (preset == "close-azimuth") {
    cfg.stft_cfg = StftConfig::pipelined();
    cfg.ranges = SamplingRanges::close_azimuth_preset();
  } else {
    throw Error("unknown preset '" + preset +
                "' (expected pipelined, all-in-one, or close-azimuth)");
  }
  cfg.preset = preset;
}

inline nlohmann::json config_to_json(const RunConfig& cfg) {
  nlohmann::json j;
  j["preset"] = cfg.preset;
  j["stft"]["window_len"] = cfg.stft_cfg.window_len;
  j["stft"]["hop"] = cfg.stft_cfg.hop;
  j["stft"]["fft_size"] = cfg.stft_cfg.fft_size;
  j["sample_rate"] = cfg.sample_rate;
  j["pairs"] = pairs_to_string(cfg.pairs);
  j["tpd_mode"] = cfg.tpd_mode;
  j["sound_speed"] = cfg.sound_speed;
  j["floor_eps"] = cfg.floor_eps;
  j["n_mels"] = cfg.n_mels;
  j["sf_sharpness"] = cfg.sf_sharpness;
  j["sf_threshold"] = cfg.sf_threshold;
  j["fractional_delay"] = cfg.fractional_delay;
  j["max_clean_seconds"] = cfg.max_clean_seconds;
  return j;
}

// Applies fields present in `j` on top of `cfg`. A "preset" key is applied
// first so explicit fields in the same file win over preset defaults.
inline void config_apply_json(RunConfig& cfg, const nlohmann::json& j) {
  try {
    if (j.contains("preset")) apply_preset(cfg, j.at("preset").get<std::string>());
    if (j.contains("stft")) {
      const auto& s = j.at("stft");
      if (s.contains("window_len"))
        cfg.stft_cfg.window_len = s.at("window_len").get<int>();
      if (s.contains("hop")) cfg.stft_cfg.hop = s.at("hop").get<int>();
      if (s.contains("fft_size"))
        cfg.stft_cfg.fft_size = s.at("fft_size").get<int>();
    }
    if (j.contains("sample_rate")) cfg.sample_rate = j.at("sample_rate").get<int>();
    if (j.contains("pairs"))
      cfg.pairs = pairs_from_string(j.at("pairs").get<std::string>());
    if (j.contains("tpd_mode")) cfg.tpd_mode = j.at("tpd_mode").get<std::string>();
    if (j.contains("sound_speed")) cfg.sound_speed = j.at("sound_speed").get<double>();
    if (j.contains("floor_eps")) cfg.floor_eps = j.at("floor_eps").get<double>();
    if (j.contains("n_mels")) cfg.n_mels = j.at("n_mels").get<int>();
    if (j.contains("sf_sharpness"))
      cfg.sf_sharpness = j.at("sf_sharpness").get<double>();
    if (j.contains("sf_threshold"))
      cfg.sf_threshold = j.at("sf_threshold").get<double>();
    if (j.contains("fractional_delay"))
      cfg.fractional_delay = j.at("fractional_delay").get<std::string>();
    if (j.contains("max_clean_seconds"))
      cfg.max_clean_seconds = j.at("max_clean_seconds").get<double>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("config: mistyped field: ") + e.what());
  }
}

inline void config_load_file(RunConfig& cfg, const std::string& path) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(detail::read_file(path));
  } catch (const nlohmann::json::exception& e) {
    throw Error("config: parse error in " + path + ": " + e.what());
  }
  config_apply_json(cfg, j);
}

// Fingerprint of everything that affects feature values. Stamped into
// feature files; readers compare against their own config's digest.
inline std::string config_digest(const RunConfig& cfg) {
  std::string s;
  s += "stft=" + std::to_string(cfg.stft_cfg.window_len) + "/" +
       std::to_string(cfg.stft_cfg.hop) + "/" +
       std::to_string(cfg.stft_cfg.fft_size);
  s += ";fs=" + std::to_string(cfg.sample_rate);
  s += ";pairs=" + pairs_to_string(cfg.pairs);
  s += ";tpd=" + cfg.tpd_mode;
  s += ";c=" + std::to_string(cfg.sound_speed);
  s += ";eps=" + std::to_string(cfg.floor_eps);
  s += ";mels=" + std::to_string(cfg.n_mels);
  return hex64(fnv1a64(s));
}

// Resolution order: defaults -> preset -> config file (SF3D_CONFIG env var,
// then --config flag) -> individual CLI flags.
inline RunConfig resolve_config(const std::string& preset_flag,
                                const std::string& config_flag) {
  RunConfig cfg;
  if (!preset_flag.empty()) apply_preset(cfg, preset_flag);
  if (const char* env = std::getenv("SF3D_CONFIG"); env && *env)
    config_load_file(cfg, env);
  if (!config_flag.empty()) config_load_file(cfg, config_flag);
  if (!preset_flag.empty() && cfg.preset != preset_flag)
    apply_preset(cfg, preset_flag);  // explicit flag beats file preset
  return cfg;
}

}  // namespace sf3d

#endif  // SF3D_CONFIG_HPP_
