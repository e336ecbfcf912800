// Copyright (C) 2026 The fdcran authors
// SPDX-License-Identifier: Apache-2.0

#include "analytic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include <boost/math/special_functions/binomial.hpp>
#include <boost/math/special_functions/expint.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/tools/toms748_solve.hpp>

#include "geometry.hpp"
#include "quadrature.hpp"

namespace fdcran {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

// Tolerances for the nested integrals: inner tighter than outer.
constexpr double kOuterTol = 1e-8;
constexpr double kInnerTol = 1e-10;

double gamma_ratio(double M, double delta) { return boost::math::tgamma_ratio(M + delta, M); }

/// 1 - E[exp(-a V^kappa)] for V ~ U(0, 1).
double one_minus_stretched_mean(double a, double kappa) {
  if (a < 1e-3) {
    return a / (1.0 + kappa) - a * a / (2.0 * (1.0 + 2.0 * kappa)) + a * a * a / (6.0 * (1.0 + 3.0 * kappa));
  }
  const double s = 1.0 / kappa;
  const double log_mean =
      boost::math::lgamma(s) + std::log(boost::math::gamma_p(s, a)) - std::log(kappa) - s * std::log(a);
  return -std::expm1(log_mean);
}

/// Lower end of the log window for z-integrals whose integrand behaves like z^delta near 0.
double z_window_low(double power, double delta) {
  return -std::log(std::max(power, 1.0)) - 40.0 / delta;
}

/// 1 - L_X(s) = E[1 - exp(-s X)] = int e^-v P(X > v / s) dv.
template <class Ccdf>
QuadResult laplace_complement(const Ccdf& ccdf, double s) {
  return integrate_log([&](double v) { return std::exp(-v) * ccdf(v / s); }, -40.0, std::log(50.0), kInnerTol);
}

/// E ln(1 + W / (1 + C)), C ~ Exp(mean sigma), given 1 - L_W(z).
template <class OneMinusL>
QuadResult mgf_rate(const OneMinusL& one_minus_l, double sigma, double x_lo) {
  return integrate_log(
      [&](double z) { return std::exp(-z) / z * one_minus_l(z) / (1.0 + sigma * z); }, x_lo, std::log(50.0),
      kOuterTol);
}

/// I_n = int_0^1 w^n / (1 - q w) dw for n = 0..N.
double beta_resolvent(int n, double q) {
  if (q < 0.5) {
    double sum = 0.0, qk = 1.0;
    for (int k = 0; k < 400; ++k) {
      const double term = qk / (n + k + 1);
      sum += term;
      if (term < 1e-17 * sum) break;
      qk *= q;
    }
    return sum;
  }
  double I = -std::log1p(-q) / q;
  for (int k = 1; k <= n; ++k) I = (I - 1.0 / k) / q;
  return I;
}

}  // namespace

double theta(double p_eff, double lambda, double phi_eff, double M_eff, double delta) {
  return p_eff * lambda * (kPi - phi_eff) * gamma_ratio(M_eff, delta);
}

double theta_dl(const SystemConfig& c) { return theta(c.p_d, c.lambda, c.phi, c.M, delta(c)); }

double theta_ul(const SystemConfig& c, int M_eff) {
  return theta(1.0 - c.p_d, c.lambda, 0.0, M_eff, delta(c));
}

double cdf_best_gain(double t, double th, double delta) {
  if (!(t > 0.0)) return 0.0;
  return std::exp(-th * std::pow(t, -delta));
}

BestGainLaw::BestGainLaw(double intensity, double half_angle, int M, double mu, double R)
    : c_(intensity * half_angle), M_(M), mu_(mu), delta_(2.0 / mu), R_(R), gamma_ratio_(gamma_ratio(M, 2.0 / mu)) {}

double BestGainLaw::exponent(double t) const {
  if (!(t > 0.0)) return c_ * R_ * R_;
  const double U = t * std::pow(R_, mu_);
  const double inner = std::pow(t, -delta_) * gamma_ratio_ * boost::math::gamma_p(M_ + delta_, U) +
                       R_ * R_ * boost::math::gamma_q(static_cast<double>(M_), U);
  return c_ * inner;
}

double BestGainLaw::cdf(double t) const { return std::exp(-exponent(t)); }
double BestGainLaw::ccdf(double t) const { return -std::expm1(-exponent(t)); }
double BestGainLaw::empty_prob() const { return std::exp(-c_ * R_ * R_); }

BestGainLaw dl_best_gain_law(const SystemConfig& c) {
  return BestGainLaw(c.p_d * c.lambda, kPi - c.phi, c.M, c.mu, c.R);
}

double cdf_product_zi(double t, int M) {
  if (!(t > 0.0)) return 0.0;
  if (M == 1) return -std::expm1(-t);
  // E[exp(-t/V)] with V ~ Beta(1, M - 1). After w = 1/V it is (M-1) times
  // int_1^inf (w-1)^(M-2) w^-M e^(-tw) dw, a binomial sum of E_n(t).
  double mean = 0.0;
  for (int k = 0; k <= M - 2; ++k) {
    const double sign = (M - 2 - k) % 2 ? -1.0 : 1.0;
    mean += sign * boost::math::binomial_coefficient<double>(M - 2, k) * boost::math::expint(M - k, t);
  }
  mean *= M - 1;
  return std::clamp(1.0 - mean, 0.0, 1.0);
}

double empty_dl_prob(const SystemConfig& c) {
  return std::exp(-c.lambda * c.p_d * (kPi - c.phi) * c.R * c.R);
}

double exp_e1(double x) {
  if (!(x > 0.0)) return kInf;
  if (x <= 1.0) return std::exp(x) * boost::math::expint(1, x);
  // Continued fraction, modified Lentz.
  constexpr double kTiny = 1e-300;
  double b = x + 1.0, c = 1.0 / kTiny, d = 1.0 / b, h = d;
  for (int i = 1; i < 500; ++i) {
    const double an = -static_cast<double>(i) * i;
    b += 2.0;
    d = 1.0 / (an * d + b);
    c = b + an / c;
    const double del = c * d;
    h *= del;
    if (std::abs(del - 1.0) < 1e-16) break;
  }
  return h;
}

double psi_li(double x, double b) {
  if (!(b > 0.0)) return std::log1p(x);
  return std::log1p(x) + exp_e1((1.0 + x) / b) - exp_e1(1.0 / b);
}

double best_gain_rate(double th, double delta, double power) {
  if (!(th > 0.0) || !(power > 0.0)) return 0.0;
  const double k = th * std::pow(power, delta);
  const double x0 = std::log(power) + std::log(th) / delta;
  return integrate_log([&](double t) { return -std::expm1(-k * std::pow(t, -delta)) / (1.0 + t); },
                       std::min(x0, 0.0) - 40.0, std::max(x0, 0.0) + 35.0 / delta, 1e-11)
      .value;
}

double zsum_mgf(double s, int M) {
  if (!(s > 0.0)) return 1.0;
  if (M == 1) return 1.0 / (1.0 + s);
  // E[(1 + sV)^-1] = (M-1)/(1+s) int_0^1 w^(M-2) / (1 - q w) dw, q = s / (1 + s)
  const double q = s / (1.0 + s);
  const double single = (M - 1) / (1.0 + s) * beta_resolvent(M - 2, q);
  return std::pow(single, M);
}

AnalyticRate ul_rate_zf(const SystemConfig& c) {
  if (c.M < 2) throw InfeasibleError("zero-forcing receive needs at least two antennas");
  const NormalizedConfig pw = normalize(c);
  const double d = delta(c);
  const double th = theta_ul(c, c.M);
  const double p_empty = empty_dl_prob(c);
  AnalyticRate out{0.0, 0.0, "P1_UL"};
  if (!(th > 0.0) || !(pw.P_u > 0.0)) return out;

  const double full = best_gain_rate(th, d, pw.P_u);
  // P(X B > s) with B ~ Beta(M-1, 1): B^delta = V^(delta/(M-1)), V uniform.
  const double kappa = d / (c.M - 1);
  const double k = th * std::pow(pw.P_u, d);
  const double x0 = std::log(pw.P_u) + std::log(th) / d;
  const auto nulled = integrate_log(
      [&](double t) { return one_minus_stretched_mean(k * std::pow(t, -d), kappa) / (1.0 + t); },
      std::min(x0, 0.0) - 40.0, std::max(x0, 0.0) + 35.0 / d, 1e-11);
  out.value = p_empty * full + (1.0 - p_empty) * nulled.value;
  out.abs_error = nulled.error + 1e-9 * full;
  return out;
}

AnalyticRate ul_rate_zf_reduced_array(const SystemConfig& c) {
  if (c.M < 2) throw InfeasibleError("zero-forcing receive needs at least two antennas");
  const NormalizedConfig pw = normalize(c);
  const double d = delta(c);
  const double p_empty = empty_dl_prob(c);
  const double rm = best_gain_rate(theta_ul(c, c.M), d, pw.P_u);
  const double rm1 = best_gain_rate(theta_ul(c, c.M - 1), d, pw.P_u);
  return {p_empty * rm + (1.0 - p_empty) * rm1, 1e-9 * (rm + rm1), "P1_UL_REDUCED"};
}

AnalyticRate dl_rate_sra(const SystemConfig& c) {
  const NormalizedConfig pw = normalize(c);
  AnalyticRate out{0.0, 0.0, "P1_DL"};
  if (!(pw.P_b > 0.0) || c.p_d == 0.0 || c.phi >= kPi || c.lambda == 0.0) return out;
  const BestGainLaw law = dl_best_gain_law(c);
  const auto ccdf = [&](double t) { return law.ccdf(t); };
  double inner_err = 0.0;
  const auto r = mgf_rate(
      [&](double z) {
        const auto inner = laplace_complement(ccdf, z * pw.P_b);
        inner_err = std::max(inner_err, inner.error);
        return inner.value;
      },
      pw.sigma_li, z_window_low(pw.P_b, delta(c)));
  out.value = r.value;
  out.abs_error = r.error + inner_err;
  return out;
}

AnalyticRate dl_rate_sra_psi(const SystemConfig& c) {
  const NormalizedConfig pw = normalize(c);
  AnalyticRate out{0.0, 0.0, "P1_DL_PSI"};
  if (!(pw.P_b > 0.0) || c.p_d == 0.0 || c.phi >= kPi || c.lambda == 0.0) return out;
  const BestGainLaw law = dl_best_gain_law(c);
  const double d = delta(c);
  const double sigma = pw.sigma_li;
  // E g(X) = int g'(x) P(X > x) dx with g(x) = psi(P_b x, sigma).
  auto dpsi = [&](double y) {
    return sigma > 0.0 ? exp_e1((1.0 + y) / sigma) / sigma : 1.0 / (1.0 + y);
  };
  const double th = theta_dl(c);
  const double x_scale = std::log(std::min(std::pow(th, 1.0 / d), 1.0 / pw.P_b));
  const double x_top = std::log(std::max(std::pow(th, 1.0 / d), (1.0 + sigma) / pw.P_b));
  const auto r = integrate_log([&](double x) { return pw.P_b * dpsi(pw.P_b * x) * law.ccdf(x); }, x_scale - 40.0,
                               x_top + 40.0 / d, 1e-10);
  out.value = r.value;
  out.abs_error = r.error;
  return out;
}

AnalyticRate ul_rate_mrc(const SystemConfig& c) {
  const NormalizedConfig pw = normalize(c);
  const double d = delta(c);
  const double th_u = theta_ul(c, c.M);
  const double th_d = theta_dl(c);
  const double p_empty = empty_dl_prob(c);
  AnalyticRate out{0.0, 0.0, "P2_UL"};
  if (!(th_u > 0.0) || !(pw.P_u > 0.0)) return out;
  const double rm = best_gain_rate(th_u, d, pw.P_u);
  if (!(th_d > 0.0) || !(pw.P_b > 0.0)) {
    out.value = rm;
    out.abs_error = 1e-9 * rm;
    return out;
  }

  // Selected point of a PPP thinned to metric l(x)G: its gain G* ~ Gamma(M + delta)
  // and, given G*, rho^2 ~ Exp(rate theta G*^-delta). The UL metric itself is
  // (theta_u / E)^(1/delta) with E = theta_u rho_p^2 G*^-delta ~ Exp(1).
  const double shape = c.M + d;
  auto rho_q2_cdf = [&](double s, bool complement) {
    const auto r = integrate(
        [&](double g) {
          if (!(g > 0.0)) return 0.0;
          const double dens = std::exp((shape - 1.0) * std::log(g) - g - boost::math::lgamma(shape));
          const double a = th_d * s * std::pow(g, -d);
          return dens * (complement ? std::exp(-a) : -std::expm1(-a));
        },
        0.0, kInf, 1e-12);
    return r.value;
  };

  auto evaluate = [&](int level) {
    const TanhSinhRule rule(level);
    const std::size_t n = rule.size();
    std::vector<double> rho_q2(n), cos_delta(n), w_of_e(n), e1(n), g_pow(n);
    for (std::size_t k = 0; k < n; ++k) {
      const double u = rule.u[k], um = rule.one_minus_u[k];
      const bool use_low = u < 0.5;
      auto f = [&](double x) {
        const double s = std::exp(x);
        return use_low ? rho_q2_cdf(s, false) - u : rho_q2_cdf(s, true) - um;
      };
      boost::math::tools::eps_tolerance<double> tol(40);
      std::uintmax_t it = 200;
      const double fa = f(-300.0), fb = f(300.0);
      const auto root = boost::math::tools::toms748_solve(f, -300.0, 300.0, fa, fb, tol, it);
      rho_q2[k] = std::exp(0.5 * (root.first + root.second));
      cos_delta[k] = std::cos(c.phi + (kPi - c.phi) * u);
      e1[k] = use_low ? -std::log1p(-u) : -std::log(um);
      w_of_e[k] = pw.P_u * std::pow(th_u / e1[k], 1.0 / d);
      const double g = u < 0.5 ? boost::math::gamma_p_inv(shape, u) : boost::math::gamma_q_inv(shape, um);
      g_pow[k] = std::pow(g, d);
    }
    double total = 0.0;
    for (std::size_t i1 = 0; i1 < n; ++i1) {
      const double W = w_of_e[i1];
      for (std::size_t i2 = 0; i2 < n; ++i2) {
        const double rho_p2 = g_pow[i2] * e1[i1] / th_u;
        const double rho_p = std::sqrt(rho_p2);
        double acc2 = 0.0;
        for (std::size_t i3 = 0; i3 < n; ++i3) {
          const double rho_q = std::sqrt(rho_q2[i3]);
          double acc3 = 0.0;
          for (std::size_t i4 = 0; i4 < n; ++i4) {
            const double r2 = std::max(rho_p2 + rho_q2[i3] - 2.0 * rho_p * rho_q * cos_delta[i4],
                                       kMinDistance * kMinDistance);
            acc3 += rule.weight[i4] * psi_li(W, pw.P_b * std::pow(r2, -0.5 * c.mu));
          }
          acc2 += rule.weight[i3] * acc3;
        }
        total += rule.weight[i1] * rule.weight[i2] * acc2;
      }
    }
    return total;
  };

  const double coarse = evaluate(1);
  const double fine = evaluate(2);
  out.value = p_empty * rm + (1.0 - p_empty) * fine;
  out.abs_error = std::abs(fine - coarse);
  return out;
}

AnalyticRate ul_rate_mrc_uniform_pair(const SystemConfig& c) {
  const NormalizedConfig pw = normalize(c);
  const double d = delta(c);
  const double th_u = theta_ul(c, c.M);
  const double p_empty = empty_dl_prob(c);
  AnalyticRate out{0.0, 0.0, "P2_UL_UNIFORM_PAIR"};
  if (!(th_u > 0.0) || !(pw.P_u > 0.0)) return out;
  const double rm = best_gain_rate(th_u, d, pw.P_u);
  auto ccdf_u = [&](double t) { return -std::expm1(-th_u * std::pow(t, -d)); };
  // Order swapped to z outer, distance inner, so 1 - L_W(z) is computed once per z.
  const auto r = mgf_rate(
      [&](double z) {
        const double one_minus_l = laplace_complement(ccdf_u, z * pw.P_u).value;
        const auto dist = integrate(
            [&](double r) {
              return disc_pair_distance_pdf(r, c.R) *
                     zsum_mgf(z * pw.P_b * std::pow(std::max(r, kMinDistance), -c.mu), c.M);
            },
            0.0, 2.0 * c.R, kInnerTol);
        return one_minus_l * dist.value;
      },
      0.0, z_window_low(pw.P_u, d));
  out.value = p_empty * rm + (1.0 - p_empty) * r.value;
  out.abs_error = r.error;
  return out;
}

AnalyticRate dl_rate_ara(const SystemConfig& c) {
  const NormalizedConfig pw = normalize(c);
  AnalyticRate out{0.0, 0.0, "P3_DL"};
  if (!(pw.P_b > 0.0) || c.p_d == 0.0 || c.phi >= kPi || c.lambda == 0.0) return out;
  const double scale = 2.0 * c.p_d * c.lambda * (kPi - c.phi);
  auto shot = [&](double z) {
    const double a = z * pw.P_b;
    auto g = [&](double r) { return -std::expm1(-c.M * std::log1p(a * std::pow(r, -c.mu))); };
    auto f = [&](double r) { return g(r) * r; };
    // Distances are floored at kMinDistance, so the innermost disc is constant.
    // Keep that kink out of the adaptive rule; it stalls GK at small z.
    const double floor_r = std::min(kMinDistance, c.R);
    const double J = g(floor_r) * floor_r * floor_r / 2.0 +
                     integrate_log(f, std::log(floor_r), std::log(c.R), kInnerTol).value;
    return -std::expm1(-scale * J);
  };
  const auto r = mgf_rate(shot, pw.sigma_li, z_window_low(pw.P_b, delta(c)));
  out.value = r.value;
  out.abs_error = r.error;
  return out;
}

}  // namespace fdcran
