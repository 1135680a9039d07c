// Copyright 2026 The sf3d Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef SF3D_EVALUATE_HPP_
#define SF3D_EVALUATE_HPP_

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "sf3d/common.hpp"
#include "sf3d/config.hpp"
#include "sf3d/geometry.hpp"
#include "sf3d/mask.hpp"
#include "sf3d/scenario.hpp"
#include "sf3d/spatial.hpp"
#include "sf3d/stft.hpp"

// Oracle-mask evaluation: how well do masks built from the spatial feature
// under the 1D (azimuth-only) versus 3D location hypothesis separate the
// target, and how discriminative is the feature itself (contrast)? The
// ideal ratio mask bounds what any magnitude mask could do; the unprocessed
// mixture is the floor. References are the reverberant target images at
// microphone 0.

namespace sf3d {

struct EvalRow {
  std::string id;
  std::uint64_t seed = 0;
  double sir_db = 0.0;
  double t60 = 0.0;
  double delta_azimuth_deg = 0.0;  // target vs first interferer
  double delta_distance = 0.0;
  double si_snr_mix = 0.0;
  double si_snr_irm = 0.0, sdr_irm = 0.0;
  double si_snr_sf1d = 0.0, sdr_sf1d = 0.0;
  double si_snr_sf3d = 0.0, sdr_sf3d = 0.0;
  double contrast_1d = 0.0, contrast_3d = 0.0;
};

namespace detail {

inline Waveform trimmed(Waveform w, std::size_t len) {
  check(w.samples.size() >= len, "trimmed: signal shorter than target length");
  w.samples.resize(len);
  return w;
}

inline double median(std::vector<double> v) {
  check(!v.empty(), "median: empty");
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace detail

inline EvalRow evaluate_scenario(const Scenario& sc,
                                 const std::vector<Waveform>& mixture,
                                 const std::vector<std::vector<Waveform>>& images,
                                 const RunConfig& cfg,
                                 const std::string& id = "") {
  sc.validate();
  cfg.validate();
  check(mixture.size() == sc.array.size(),
        "evaluate_scenario: mixture channel count != microphone count");
  check(images.size() == sc.sources.size(),
        "evaluate_scenario: need one image set per source");
  const std::size_t len = mixture.front().samples.size();
  for (const auto& ch : mixture)
    check(ch.samples.size() == len && ch.sample_rate == cfg.sample_rate,
          "evaluate_scenario: mixture channels disagree with the config");

  std::size_t tgt = sc.sources.size();
  for (std::size_t s = 0; s < sc.sources.size(); ++s)
    if (sc.sources[s].role == "target") tgt = s;

  // Channel-0 target and summed-interference images.
  Waveform target0 = images[tgt][0];
  check(target0.samples.size() == len,
        "evaluate_scenario: image length != mixture length");
  Waveform interf0;
  interf0.sample_rate = cfg.sample_rate;
  interf0.samples.assign(len, 0.0);
  for (std::size_t s = 0; s < images.size(); ++s) {
    if (s == tgt) continue;
    check(images[s][0].samples.size() == len,
          "evaluate_scenario: image length != mixture length");
    for (std::size_t n = 0; n < len; ++n)
      interf0.samples[n] += images[s][0].samples[n];
  }

  std::vector<ComplexSpectrogram> specs;
  specs.reserve(mixture.size());
  for (const auto& ch : mixture) specs.push_back(stft(ch, cfg.stft_cfg));
  const ComplexSpectrogram spec_t = stft(target0, cfg.stft_cfg);
  const ComplexSpectrogram spec_i = stft(interf0, cfg.stft_cfg);

  EvalRow row;
  row.id = id;
  row.seed = sc.seed;
  row.sir_db = sc.sir_db;
  row.t60 = sc.room.t60;
  const auto interferers = sc.interferers();
  if (!interferers.empty()) {
    const SourceLocation& a = sc.target().location;
    const SourceLocation& b = interferers.front()->location;
    row.delta_azimuth_deg = std::abs(a.azimuth - b.azimuth) * 180.0 / kPi;
    row.delta_distance = std::abs(a.distance - b.distance);
  }

  row.si_snr_mix = si_snr(mixture[0], target0);

  const Mask irm = ideal_ratio_mask(spec_t, spec_i);
  const Waveform est_irm = detail::trimmed(apply_mask(specs[0], irm), len);
  row.si_snr_irm = si_snr(est_irm, target0);
  row.sdr_irm = sdr(est_irm, target0);

  const IpdMatrix ipd_mat = ipd(specs, cfg.pairs);
  const SourceLocation& loc = sc.target().location;
  const TpdMatrix tpd1 =
      tpd_1d(loc.azimuth, cfg.pairs, sc.array, cfg.stft_cfg.bins(),
             cfg.sample_rate, cfg.sound_speed);
  const TpdMatrix tpd3 = tpd_3d(loc, cfg.pairs, sc.array, cfg.stft_cfg.bins(),
                                cfg.sample_rate, cfg.sound_speed);

  const SfMatrix sf1 = spatial_feature(ipd_mat, tpd1);
  const SfMatrix sf3 = spatial_feature(ipd_mat, tpd3);

  const Mask m1 = sf_mask(sf1, cfg.sf_sharpness, cfg.sf_threshold);
  const Mask m3 = sf_mask(sf3, cfg.sf_sharpness, cfg.sf_threshold);
  const Waveform est1 = detail::trimmed(apply_mask(specs[0], m1), len);
  const Waveform est3 = detail::trimmed(apply_mask(specs[0], m3), len);
  row.si_snr_sf1d = si_snr(est1, target0);
  row.sdr_sf1d = sdr(est1, target0);
  row.si_snr_sf3d = si_snr(est3, target0);
  row.sdr_sf3d = sdr(est3, target0);

  row.contrast_1d = sf_contrast(sf1, spec_t, spec_i);
  row.contrast_3d = sf_contrast(sf3, spec_t, spec_i);
  return row;
}

struct EvalSummary {
  std::size_t rows = 0;
  double median_si_snr_mix = 0.0;
  double median_si_snr_irm = 0.0;
  double median_si_snr_sf1d = 0.0;
  double median_si_snr_sf3d = 0.0;
  double median_si_snr_3d_minus_1d = 0.0;
  double frac_contrast_3d_gt_1d = 0.0;
  double frac_irm_improves = 0.0;
};

inline EvalSummary summarize(const std::vector<EvalRow>& rows) {
  check(!rows.empty(), "summarize: no rows");
  EvalSummary s;
  s.rows = rows.size();
  std::vector<double> mix, irm, sf1d, sf3d, diff;
  std::size_t contrast_wins = 0, irm_wins = 0;
  for (const auto& r : rows) {
    mix.push_back(r.si_snr_mix);
    irm.push_back(r.si_snr_irm);
    sf1d.push_back(r.si_snr_sf1d);
    sf3d.push_back(r.si_snr_sf3d);
    diff.push_back(r.si_snr_sf3d - r.si_snr_sf1d);
    if (r.contrast_3d > r.contrast_1d) ++contrast_wins;
    if (r.si_snr_irm > r.si_snr_mix) ++irm_wins;
  }
  s.median_si_snr_mix = detail::median(mix);
  s.median_si_snr_irm = detail::median(irm);
  s.median_si_snr_sf1d = detail::median(sf1d);
  s.median_si_snr_sf3d = detail::median(sf3d);
  s.median_si_snr_3d_minus_1d = detail::median(diff);
  s.frac_contrast_3d_gt_1d =
      static_cast<double>(contrast_wins) / static_cast<double>(rows.size());
  s.frac_irm_improves =
      static_cast<double>(irm_wins) / static_cast<double>(rows.size());
  return s;
}

// Tab-separated table with a digest comment, one row per scenario, and
// aggregate lines the harness can grep.
inline std::string format_results(const std::vector<EvalRow>& rows,
                                  const RunConfig& cfg) {
  auto num = [](double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return std::string(buf);
  };
  std::string out;
  out += "# sf3d evaluation\n";
  out += "# config_digest " + config_digest(cfg) + "\n";
  out +=
      "id\tseed\tsir_db\tt60\td_az_deg\td_dist\tsi_snr_mix\tsi_snr_irm\t"
      "sdr_irm\tsi_snr_sf1d\tsdr_sf1d\tsi_snr_sf3d\tsdr_sf3d\tcontrast_1d\t"
      "contrast_3d\n";
  for (const auto& r : rows) {
    out += r.id + "\t" + std::to_string(r.seed) + "\t" + num(r.sir_db) + "\t" +
           num(r.t60) + "\t" + num(r.delta_azimuth_deg) + "\t" +
           num(r.delta_distance) + "\t" + num(r.si_snr_mix) + "\t" +
           num(r.si_snr_irm) + "\t" + num(r.sdr_irm) + "\t" +
           num(r.si_snr_sf1d) + "\t" + num(r.sdr_sf1d) + "\t" +
           num(r.si_snr_sf3d) + "\t" + num(r.sdr_sf3d) + "\t" +
           num(r.contrast_1d) + "\t" + num(r.contrast_3d) + "\n";
  }
  if (!rows.empty()) {
    const EvalSummary s = summarize(rows);
    out += "# aggregate rows " + std::to_string(s.rows) + "\n";
    out += "# aggregate median_si_snr_mix " + num(s.median_si_snr_mix) + "\n";
    out += "# aggregate median_si_snr_irm " + num(s.median_si_snr_irm) + "\n";
    out += "# aggregate median_si_snr_sf1d " + num(s.median_si_snr_sf1d) + "\n";
    out += "# aggregate median_si_snr_sf3d " + num(s.median_si_snr_sf3d) + "\n";
    out += "# aggregate median_si_snr_3d_minus_1d " +
           num(s.median_si_snr_3d_minus_1d) + "\n";
    out += "# aggregate frac_contrast_3d_gt_1d " +
           num(s.frac_contrast_3d_gt_1d) + "\n";
    out += "# aggregate frac_irm_improves " + num(s.frac_irm_improves) + "\n";
  }
  return out;
}

}  // namespace sf3d

#endif  // SF3D_EVALUATE_HPP_
