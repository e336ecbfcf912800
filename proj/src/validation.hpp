// Copyright (C) 2026 The fdcran authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "config.hpp"

namespace fdcran {

/// One analytic-vs-simulation comparison. For the cdf rows (LEMMA1, LEMMA2)
/// abs_gap is the Kolmogorov-Smirnov distance, analytic_value is the analytic cdf
/// at the empirical median and mc_value is 0.5.
struct ValidationRow {
  std::string formula_id;
  double analytic_value = 0.0;
  double mc_value = 0.0;
  double mc_std_error = 0.0;
  double abs_gap = 0.0;
  double tolerance = 0.0;
  std::string verdict;  // PASS, FAIL, INFO or SKIP
};

struct ValidationReport {
  std::vector<ValidationRow> rows;
  bool all_passed = true;  // over PASS/FAIL rows only
};

/// Sample count for the cdf comparisons.
inline constexpr std::uint64_t kKsSamples = 100000;

/// Every analytic formula against its matched Monte Carlo estimate (config.trials
/// trials). Tolerances are multiplied by tolerance_scale.
ValidationReport run_validation(const SystemConfig& config, double tolerance_scale = 1.0,
                                std::uint64_t ks_samples = kKsSamples);

/// sup |F_n - F| for the empirical cdf of `samples` (sorted in place).
double ks_distance(std::vector<double>& samples, const std::function<double(double)>& cdf);

/// Best l(x)|h|^2 over the DL RRHs allowed to transmit, one value per trial
/// (0 when none is), plus whether that set was empty.
struct BestGainSamples {
  std::vector<double> gain;
  std::vector<char> empty;
};
BestGainSamples sample_best_dl_gain(const SystemConfig& config, std::uint64_t n);

/// |w_mrc^H H e_1|^2 |w_mrt,1|^2 for independent CN draws of g, H and h.
std::vector<double> sample_product_zi(int M, std::uint64_t n, std::uint64_t seed);

}  // namespace fdcran
