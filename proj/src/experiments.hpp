// Copyright (C) 2026 The fdcran authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "montecarlo.hpp"

namespace fdcran {

struct RateRow {
  DesignKey key;
  double x = 0.0;  // p_d or phi, per RateTable::x_name
  RatePair rates;
};

struct RateTable {
  std::string x_name = "p_d";
  std::vector<RateRow> rows;
};

/// n evenly spaced points including both ends (n == 1 gives {a}).
std::vector<double> linspace(double a, double b, int n);

/// SRA FD {OPTIMAL, ZF_MRT, MRC_MRT}, ARA FD {ZF_MRT, MRC_MRT}, HD {ARA, SRA}.
std::vector<DesignKey> rate_region_keys();

/// The SRA full-duplex designs compared across phi.
std::vector<DesignKey> phi_sweep_keys();

RateTable single_run(const SystemConfig& config, const DesignKey& key, std::uint64_t trials);

/// One row per (p_d, key). Keys whose design the config cannot support (ZF with M == 1) are skipped.
RateTable rate_region(const SystemConfig& config, const std::vector<double>& p_grid, std::uint64_t trials,
                      std::vector<DesignKey> keys = rate_region_keys());

RateTable phi_sweep(const SystemConfig& config, const std::vector<double>& phi_grid, std::uint64_t trials,
                    std::vector<DesignKey> keys = phi_sweep_keys());

struct GainEntry {
  Design design = Design::kZfMrt;
  double ratio = 0.0;  // best FD-SRA / HD-SRA sum-rate ratio over the interior of the grid
  double p_d = 0.0;    // where it is attained
};

/// FD-SRA over HD-SRA sum rate, maximized over p_d. The endpoints are skipped:
/// there both modes carry a single direction and the ratio is 1 / tau or 1 / (1 - tau)
/// for every design.
std::vector<GainEntry> fd_hd_gain(const SystemConfig& config, const std::vector<double>& p_grid,
                                  std::uint64_t trials);

}  // namespace fdcran
