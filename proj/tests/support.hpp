// Copyright (C) 2026 The fdcran authors
// SPDX-License-Identifier: Apache-2.0

// Shared helpers for the unit tests: seeded random instances and small oracles.

#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

#include "config.hpp"
#include "rng.hpp"
#include "types.hpp"

namespace fdcran::test {

inline Stream stream(std::uint64_t seed, std::uint64_t index = 0) {
  return TrialStreams(seed, index).stream(StreamTag::kAux);
}

inline CVec random_vec(Stream& s, int M) {
  CVec v;
  s.fill_complex_normal(v, M);
  return v;
}

inline CMat random_mat(Stream& s, int M) {
  CMat H(M, M);
  for (int c = 0; c < M; ++c)
    for (int r = 0; r < M; ++r) H(r, c) = s.complex_normal();
  return H;
}

inline CVec unit_vec(Stream& s, int M) {
  CVec v = random_vec(s, M);
  return v / v.norm();
}

/// The configuration the cross-validation runs use.
inline SystemConfig reference_config() {
  SystemConfig c;
  c.lambda = 0.001;
  c.R = 150.0;
  c.mu = 3.0;
  c.M = 2;
  c.p_d = 0.5;
  c.phi = std::numbers::pi / 3.0;
  c.P_b_dbm = 10.0;
  c.P_u_dbm = 10.0;
  c.sigma_li_dbm = -30.0;
  c.noise_dbm = -60.0;
  c.trials = 20000;
  c.seed = 1;
  return c;
}

inline double rel_gap(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace fdcran::test
