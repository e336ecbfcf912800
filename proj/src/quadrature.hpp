// Copyright (C) 2026 The fdcran authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

namespace fdcran {

struct QuadResult {
  double value = 0.0;
  double error = 0.0;
};

/// Adaptive 61-point Gauss-Kronrod on [a, b]; b may be +infinity.
template <class F>
QuadResult integrate(F&& f, double a, double b, double rel_tol = 1e-10, unsigned max_depth = 15) {
  QuadResult r;
  r.value = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, max_depth, rel_tol, &r.error);
  return r;
}

/// Integral of f(t) dt over t in [e^x_lo, e^x_hi] after t = e^x. Semi-infinite
/// integrands with a power-law tail become exponentially decaying in x.
template <class F>
QuadResult integrate_log(F&& f, double x_lo, double x_hi, double rel_tol = 1e-10) {
  auto g = [&](double x) {
    const double t = std::exp(x);
    return f(t) * t;
  };
  // Split so each panel sees one scale of the integrand.
  QuadResult total;
  constexpr int kPanels = 8;
  const double step = (x_hi - x_lo) / kPanels;
  for (int i = 0; i < kPanels; ++i) {
    const QuadResult part = integrate(g, x_lo + i * step, x_lo + (i + 1) * step, rel_tol, 12);
    total.value += part.value;
    total.error += part.error;
  }
  return total;
}

/// Adaptive tanh-sinh on [a, b]; tolerates integrable endpoint singularities.
template <class F>
QuadResult integrate_endpoint_singular(F&& f, double a, double b, double rel_tol = 1e-10) {
  thread_local boost::math::quadrature::tanh_sinh<double> ts;
  QuadResult r;
  r.value = ts.integrate(f, a, b, rel_tol, &r.error);
  return r;
}

/// Fixed tanh-sinh rule on (0, 1) with step h = 2^-level. Nodes carry their
/// complement 1 - u computed without cancellation.
struct TanhSinhRule {
  std::vector<double> u;
  std::vector<double> one_minus_u;
  std::vector<double> weight;

  explicit TanhSinhRule(int level);
  std::size_t size() const { return u.size(); }
};

}  // namespace fdcran
