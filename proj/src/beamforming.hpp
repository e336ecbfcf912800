// Copyright (C) 2026 The fdcran authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "types.hpp"

namespace fdcran {

/// Unit-norm transmit (at the DL RRH) and receive (at the UL RRH) vectors.
struct BeamformerPair {
  CVec w_t;
  CVec w_r;
};

struct OptimalSolveReport {
  double alpha_star = 0.0;
  double sum_rate = 0.0;  // nats, evaluated from `pair`
  int iterations = 0;     // evaluations of f(alpha)
  BeamformerPair pair;
};

struct FAlpha {
  double value = 0.0;  // |h^H w_t|^2
  CVec w_t;
};

struct BruteForceResult {
  double sum_rate = 0.0;
  BeamformerPair pair;
};

CVec mrt(const CVec& h);
CVec mrc(const CVec& g);

/// Projects g off the interference direction H h. Needs M >= 2.
CVec zf_receive(const CVec& g, const CMat& H, const CVec& h);

/// UL-SINR-maximizing receiver for a fixed w_t, via the rank-one inverse.
CVec mmse_receive(const CVec& g, const CMat& H, const CVec& w_t, double a3);

/// a3 |g^H H w|^2 / (1 + a3 |H w|^2) for unit w: the UL gain the MMSE receiver
/// loses to interference when transmitting along w.
double suppressed_interference(const CVec& w, const CVec& g, const CMat& H, double a3);

/// Largest achievable suppressed_interference over unit w.
double alpha_max(const CVec& g, const CMat& H, double a3);

/// max |h^H w|^2 over unit w with suppressed_interference(w) == alpha.
/// Throws InfeasibleError for alpha outside [0, alpha_max].
FAlpha solve_f_alpha(double alpha, const CVec& h, const CVec& g, const CMat& H, double a3);

/// ln(1 + a1 |h^H w_t|^2) + ln(1 + a2 |w_r^H g|^2 / (a3 |w_r^H H w_t|^2 + 1)).
double pair_sum_rate(const BeamformerPair& pair, const CVec& h, const CVec& g, const CMat& H, double a1,
                     double a2, double a3);

OptimalSolveReport solve_optimal_pair(const CVec& h, const CVec& g, const CMat& H, double a1, double a2,
                                      double a3);

/// Exhaustive search for M == 2 over w = (cos t, e^{ip} sin t), t on (grid_density + 1)
/// points of [0, pi/2] and p on grid_density points of [0, 2 pi), for both vectors.
BruteForceResult brute_force_pair(const CVec& h, const CVec& g, const CMat& H, double a1, double a2,
                                  double a3, int grid_density);

}  // namespace fdcran
