// Copyright (C) 2026 The fdcran authors
// SPDX-License-Identifier: Apache-2.0

#include "validation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "analytic.hpp"
#include "association.hpp"
#include "channel.hpp"
#include "geometry.hpp"
#include "montecarlo.hpp"
#include "rng.hpp"

namespace fdcran {

namespace {

ValidationRow rate_row(const AnalyticRate& a, const RateEstimate& mc, double rel, double scale) {
  ValidationRow row;
  row.formula_id = a.formula_id;
  row.analytic_value = a.value;
  row.mc_value = mc.mean;
  row.mc_std_error = mc.std_error;
  row.abs_gap = std::abs(a.value - mc.mean);
  row.tolerance = std::max(rel * std::abs(mc.mean), 3.0 * mc.std_error) * scale;
  row.verdict = row.abs_gap <= row.tolerance ? "PASS" : "FAIL";
  return row;
}

ValidationRow info_row(ValidationRow row) {
  row.verdict = "INFO";
  return row;
}

ValidationRow ks_row(const char* id, std::vector<double>& samples, const std::function<double(double)>& cdf,
                     double scale) {
  ValidationRow row;
  row.formula_id = id;
  row.abs_gap = ks_distance(samples, cdf);
  const std::size_t n = samples.size();
  const double median = n % 2 ? samples[n / 2] : 0.5 * (samples[n / 2 - 1] + samples[n / 2]);
  row.analytic_value = cdf(median);
  row.mc_value = 0.5;
  row.mc_std_error = 0.5 / std::sqrt(static_cast<double>(n));
  row.tolerance = 0.01 * scale;
  row.verdict = row.abs_gap < row.tolerance ? "PASS" : "FAIL";
  return row;
}

}  // namespace

double ks_distance(std::vector<double>& samples, const std::function<double(double)>& cdf) {
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double f = cdf(samples[i]);
    d = std::max({d, f - i / n, (i + 1) / n - f});
  }
  return d;
}

BestGainSamples sample_best_dl_gain(const SystemConfig& config, std::uint64_t n) {
  const Scenario scenario(config);
  BestGainSamples out;
  out.gain.assign(n, 0.0);
  out.empty.assign(n, 0);
  parallel_trials(n, [&](std::uint64_t t) {
    const TrialStreams streams(config.seed, t);
    Stream geometry = streams.stream(StreamTag::kGeometry);
    const NetworkRealization realization = sample_realization(config, geometry);
    const ChannelDraw channels(realization, config.M, scenario.power.li_gain(), streams);
    double best = 0.0;
    const auto allowed = ara_dl_set(realization, channels, config);
    for (std::size_t i : allowed) {
      best = std::max(best, path_loss(realization.dl[i].pos, config.mu) * channels.downlink(i).squaredNorm());
    }
    out.gain[t] = best;
    out.empty[t] = allowed.empty();
  });
  return out;
}

std::vector<double> sample_product_zi(int M, std::uint64_t n, std::uint64_t seed) {
  std::vector<double> out(n);
  parallel_trials(n, [&](std::uint64_t t) {
    Stream s = TrialStreams(seed, t).stream(StreamTag::kAux);
    CVec g, h, col;
    s.fill_complex_normal(g, M);
    s.fill_complex_normal(h, M);
    s.fill_complex_normal(col, M);
    out[t] = std::norm(g.dot(col)) / g.squaredNorm() * std::norm(h[0]) / h.squaredNorm();
  });
  return out;
}

ValidationReport run_validation(const SystemConfig& config, double scale, std::uint64_t ks_samples) {
  validate(config);
  ValidationReport report;
  const bool zf_ok = config.M >= 2;

  std::vector<DesignKey> keys = {{Scheme::kSra, Design::kMrcMrt, Duplex::kFull},
                                 {Scheme::kAra, Design::kMrcMrt, Duplex::kFull}};
  if (zf_ok) keys.push_back({Scheme::kSra, Design::kZfMrt, Duplex::kFull});
  const auto mc = estimate_many(config, keys, config.trials);
  const RatePair& sra_mrc = mc[0];
  const RatePair& ara = mc[1];

  if (zf_ok) {
    report.rows.push_back(rate_row(ul_rate_zf(config), mc[2].ul, 0.02, scale));
  } else {
    ValidationRow skip;
    skip.formula_id = "P1_UL";
    skip.analytic_value = std::numeric_limits<double>::quiet_NaN();
    skip.verdict = "SKIP";
    report.rows.push_back(skip);
  }
  report.rows.push_back(rate_row(dl_rate_sra(config), (zf_ok ? mc[2] : sra_mrc).dl, 0.02, scale));
  report.rows.push_back(rate_row(ul_rate_mrc(config), sra_mrc.ul, 0.05, scale));
  report.rows.push_back(rate_row(dl_rate_ara(config), ara.dl, 0.03, scale));

  BestGainSamples best = sample_best_dl_gain(config, ks_samples);
  {
    const double p = empty_dl_prob(config);
    double empty = 0.0;
    for (char e : best.empty) empty += e;
    const double n = static_cast<double>(ks_samples);
    ValidationRow row;
    row.formula_id = "EMPTY_PROB";
    row.analytic_value = p;
    row.mc_value = empty / n;
    row.mc_std_error = std::sqrt(p * (1.0 - p) / n);
    row.abs_gap = std::abs(row.analytic_value - row.mc_value);
    row.tolerance = std::max(3.0 * row.mc_std_error, 1.0 / n) * scale;
    row.verdict = row.abs_gap <= row.tolerance ? "PASS" : "FAIL";
    report.rows.push_back(row);
  }
  const double th = theta_dl(config), d = delta(config);
  report.rows.push_back(ks_row("LEMMA1", best.gain, [&](double t) { return cdf_best_gain(t, th, d); }, scale));
  std::vector<double> z = sample_product_zi(config.M, ks_samples, config.seed);
  report.rows.push_back(ks_row("LEMMA2", z, [&](double t) { return cdf_product_zi(t, config.M); }, scale));

  if (zf_ok) report.rows.push_back(info_row(rate_row(ul_rate_zf_reduced_array(config), mc[2].ul, 0.02, scale)));
  report.rows.push_back(info_row(rate_row(ul_rate_mrc_uniform_pair(config), sra_mrc.ul, 0.05, scale)));

  for (const auto& row : report.rows) {
    if (row.verdict == "FAIL") report.all_passed = false;
  }
  return report;
}

}  // namespace fdcran
