// Copyright (C) 2026 The fdcran authors
// SPDX-License-Identifier: Apache-2.0

#include "experiments.hpp"

#include <algorithm>

namespace fdcran {

namespace {

std::vector<DesignKey> supported(const SystemConfig& config, std::vector<DesignKey> keys) {
  std::erase_if(keys, [&](const DesignKey& k) {
    return k.duplex == Duplex::kFull && k.design == Design::kZfMrt && config.M < 2;
  });
  return keys;
}

}  // namespace

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> out;
  if (n <= 0) return out;
  if (n == 1) return {a};
  out.reserve(n);
  for (int i = 0; i < n; ++i) out.push_back(i == n - 1 ? b : a + (b - a) * i / (n - 1));
  return out;
}

std::vector<DesignKey> rate_region_keys() {
  return {
      {Scheme::kSra, Design::kOptimal, Duplex::kFull}, {Scheme::kSra, Design::kZfMrt, Duplex::kFull},
      {Scheme::kSra, Design::kMrcMrt, Duplex::kFull},  {Scheme::kAra, Design::kZfMrt, Duplex::kFull},
      {Scheme::kAra, Design::kMrcMrt, Duplex::kFull},  {Scheme::kAra, Design::kMrcMrt, Duplex::kHalf},
      {Scheme::kSra, Design::kMrcMrt, Duplex::kHalf},
  };
}

std::vector<DesignKey> phi_sweep_keys() {
  return {
      {Scheme::kSra, Design::kOptimal, Duplex::kFull},
      {Scheme::kSra, Design::kZfMrt, Duplex::kFull},
      {Scheme::kSra, Design::kMrcMrt, Duplex::kFull},
  };
}

RateTable single_run(const SystemConfig& config, const DesignKey& key, std::uint64_t trials) {
  RateTable table;
  table.rows.push_back({key, config.p_d, estimate(config, key.scheme, key.design, trials, key.duplex)});
  return table;
}

RateTable rate_region(const SystemConfig& config, const std::vector<double>& p_grid, std::uint64_t trials,
                      std::vector<DesignKey> keys) {
  keys = supported(config, std::move(keys));
  RateTable table;
  table.x_name = "p_d";
  for (double p : p_grid) {
    SystemConfig c = config;
    c.p_d = p;
    const auto rates = estimate_many(c, keys, trials);
    for (std::size_t i = 0; i < keys.size(); ++i) table.rows.push_back({keys[i], p, rates[i]});
  }
  return table;
}

RateTable phi_sweep(const SystemConfig& config, const std::vector<double>& phi_grid, std::uint64_t trials,
                    std::vector<DesignKey> keys) {
  keys = supported(config, std::move(keys));
  RateTable table;
  table.x_name = "phi";
  for (double phi : phi_grid) {
    SystemConfig c = config;
    c.phi = phi;
    const auto rates = estimate_many(c, keys, trials);
    for (std::size_t i = 0; i < keys.size(); ++i) table.rows.push_back({keys[i], phi, rates[i]});
  }
  return table;
}

std::vector<GainEntry> fd_hd_gain(const SystemConfig& config, const std::vector<double>& p_grid,
                                  std::uint64_t trials) {
  const std::vector<DesignKey> fd = supported(config, phi_sweep_keys());
  std::vector<DesignKey> keys = fd;
  keys.push_back({Scheme::kSra, Design::kMrcMrt, Duplex::kHalf});
  std::vector<GainEntry> out;
  for (const auto& k : fd) out.push_back({k.design, 0.0, 0.0});
  for (double p : p_grid) {
    if (p <= 0.0 || p >= 1.0) continue;
    SystemConfig c = config;
    c.p_d = p;
    const auto rates = estimate_many(c, keys, trials);
    const double hd = rates.back().sum.mean;
    if (!(hd > 0.0)) continue;
    for (std::size_t i = 0; i < fd.size(); ++i) {
      const double ratio = rates[i].sum.mean / hd;
      if (ratio > out[i].ratio) out[i] = {fd[i].design, ratio, p};
    }
  }
  return out;
}

}  // namespace fdcran
