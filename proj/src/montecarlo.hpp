// Copyright (C) 2026 The fdcran authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "association.hpp"
#include "config.hpp"

namespace fdcran {

struct RateEstimate {
  double mean = 0.0;       // nats
  double std_error = 0.0;  // sample std / sqrt(trials)
  std::uint64_t trials = 0;
  Direction direction = Direction::kSum;
};

struct RatePair {
  RateEstimate ul;
  RateEstimate dl;
  RateEstimate sum;
};

/// One simulated system: association scheme, beamformer design, duplex mode.
/// Half-duplex always uses MRC/MRT.
struct DesignKey {
  Scheme scheme = Scheme::kSra;
  Design design = Design::kZfMrt;
  Duplex duplex = Duplex::kFull;
  bool operator==(const DesignKey&) const = default;
};

/// Worker count: FDCRAN_THREADS if set and positive, else the hardware concurrency.
unsigned worker_count();

/// Runs body(trial) for trial in [0, n) over worker_count() threads. Bodies must
/// write only to per-trial slots; the schedule does not affect results.
void parallel_trials(std::uint64_t n, const std::function<void(std::uint64_t)>& body);

/// Sum in a fixed pairwise order; the result depends only on the input order.
double pairwise_sum(std::span<const double> values);

RateEstimate summarize(std::span<const double> samples, Direction direction);

/// Rates for one trial of every key, all evaluated on the same realization and fading.
std::vector<Rates> simulate_trial(const Scenario& scenario, std::span<const DesignKey> keys, std::uint64_t trial);

/// Common-random-number estimates for several systems at once.
std::vector<RatePair> estimate_many(const SystemConfig& config, std::span<const DesignKey> keys,
                                    std::uint64_t trials);

RatePair estimate(const SystemConfig& config, Scheme scheme, Design design, std::uint64_t trials,
                  Duplex duplex = Duplex::kFull);

}  // namespace fdcran
