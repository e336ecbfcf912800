// Copyright (C) 2026 The fdcran authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <numbers>
#include <string>

#include "types.hpp"

namespace fdcran {

/// Scenario parameters. Powers are in dBm; everything else in SI units.
struct SystemConfig {
  double lambda = 0.001;  // RRH density, 1/m^2
  double R = 150.0;       // disc radius, m
  double mu = 3.0;        // path-loss exponent
  double p_d = 0.5;       // probability an RRH serves the downlink
  double phi = std::numbers::pi / 3.0;  // interference-region half-angle, rad
  int M = 3;              // antennas per RRH
  double P_b_dbm = 23.0;
  double P_u_dbm = 23.0;
  double sigma_li_dbm = -40.0;  // residual loopback power seen by the user receiver
  double noise_dbm = -60.0;
  double tau = 0.5;  // half-duplex downlink time fraction
  std::uint64_t trials = 20000;
  std::uint64_t seed = 1;

  bool operator==(const SystemConfig&) const = default;
};

/// Throws ConfigError naming the first field that violates its invariant.
void validate(const SystemConfig& config);

/// Powers as linear multiples of the noise power (noise == 1).
struct NormalizedConfig {
  double P_b = 0.0;
  double P_u = 0.0;
  double sigma_li = 0.0;  // mean residual loopback power P_u E|h_li|^2, noise units

  /// Variance of the loopback channel coefficient h_li, i.e. sigma_li / P_u.
  double li_gain() const { return P_u > 0.0 ? sigma_li / P_u : 0.0; }
};

NormalizedConfig normalize(const SystemConfig& config);

double dbm_to_linear(double dbm, double noise_dbm);
double linear_to_dbm(double linear, double noise_dbm);

/// delta = 2 / mu. Throws ConfigError("mu") unless mu > 2.
double delta(const SystemConfig& config);

struct Rational {
  long m = 0;
  long n = 1;
};

/// Best approximation m/n of x with n <= max_denominator and gcd(m, n) == 1.
Rational rationalize(double x, long max_denominator = 64);

/// Configuration plus its normalized powers; what the simulation layers consume.
struct Scenario {
  SystemConfig config;
  NormalizedConfig power;

  explicit Scenario(const SystemConfig& c) : config(c), power(normalize(c)) {}
};

SystemConfig config_from_json_text(const std::string& text);
SystemConfig load_config(const std::filesystem::path& path);

/// Canonical JSON (sorted keys, fixed formatting).
std::string canonical_json(const SystemConfig& config);

/// Stable 64-bit FNV-1a digest of canonical_json, as 16 hex digits.
std::string config_hash(const SystemConfig& config);

}  // namespace fdcran
