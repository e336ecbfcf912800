// Copyright (C) 2026 The fdcran authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>

#include "config.hpp"

namespace fdcran {

struct AnalyticRate {
  double value = 0.0;      // nats (or a probability for EMPTY_PROB)
  double abs_error = 0.0;  // quadrature error estimate
  std::string formula_id;
};

/// p lambda (pi - phi) Gamma(M + delta) / Gamma(M).
double theta(double p_eff, double lambda, double phi_eff, double M_eff, double delta);
double theta_dl(const SystemConfig& config);
/// UL version: phi -> 0, p -> 1 - p.
double theta_ul(const SystemConfig& config, int M_eff);

/// Infinite-plane cdf of the best path-loss-weighted gain: exp(-theta t^-delta).
double cdf_best_gain(double t, double theta, double delta);

/// Same quantity on a disc of radius R, where the maximum runs over a PPP of
/// intensity `intensity` on a sector of total angle 2 * half_angle. Has an atom
/// at 0 (no point) of mass exp(-intensity * half_angle * R^2).
class BestGainLaw {
 public:
  BestGainLaw(double intensity, double half_angle, int M, double mu, double R);
  double cdf(double t) const;
  double ccdf(double t) const;
  double empty_prob() const;

 private:
  double exponent(double t) const;
  double c_;  // intensity * half_angle
  int M_;
  double mu_;
  double delta_;
  double R_;
  double gamma_ratio_;
};

BestGainLaw dl_best_gain_law(const SystemConfig& config);

/// cdf of Z = U V with U ~ Exp(1) and V ~ Beta(1, M - 1) (V == 1 when M == 1).
double cdf_product_zi(double t, int M);

/// Probability that no DL RRH lies in the selection region.
double empty_dl_prob(const SystemConfig& config);

/// e^x E1(x) for x > 0, accurate for large x.
double exp_e1(double x);

/// E ln(1 + x / (1 + b I)) with I ~ Exp(1).
double psi_li(double x, double b);

/// E ln(1 + P X) for X with cdf exp(-theta t^-delta).
double best_gain_rate(double theta, double delta, double power);

/// E[(1 + s V)^-1]^M with V ~ Beta(1, M - 1): the Laplace transform of the sum of
/// the M products U_i V_i when the U_i are independent.
double zsum_mgf(double s, int M);

/// SRA ZF/MRT UL rate. The selected UL channel keeps a Beta(M-1, 1) fraction of
/// its gain after nulling.
AnalyticRate ul_rate_zf(const SystemConfig& config);

/// The same rate with the nulled gain taken as a fresh best-of-(M-1) selection.
AnalyticRate ul_rate_zf_reduced_array(const SystemConfig& config);

/// SRA DL rate (any design with MRT), through the MGF of the best DL gain.
AnalyticRate dl_rate_sra(const SystemConfig& config);

/// dl_rate_sra by a one-dimensional route over the best-gain ccdf; cross-check.
AnalyticRate dl_rate_sra_psi(const SystemConfig& config);

/// SRA MRC/MRT UL rate, averaging over the joint geometry of the two selected RRHs.
AnalyticRate ul_rate_mrc(const SystemConfig& config);

/// The same rate with the inter-RRH distance drawn as between two uniform points
/// on the disc and the interference taken as a sum of independent products.
AnalyticRate ul_rate_mrc_uniform_pair(const SystemConfig& config);

/// ARA DL rate via the finite-disc shot-noise Laplace transform.
AnalyticRate dl_rate_ara(const SystemConfig& config);

}  // namespace fdcran
