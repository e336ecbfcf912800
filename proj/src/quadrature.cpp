// Copyright (C) 2026 The fdcran authors
// SPDX-License-Identifier: Apache-2.0

#include "quadrature.hpp"

#include <numbers>

namespace fdcran {

TanhSinhRule::TanhSinhRule(int level) {
  const double h = std::ldexp(1.0, -level);
  constexpr double kHalfPi = std::numbers::pi / 2.0;
  for (int k = -4096; k <= 4096; ++k) {
    const double t = k * h;
    const double s = kHalfPi * std::sinh(t);
    // u = (1 + tanh s) / 2 on (0, 1)
    const double lo = 1.0 / (1.0 + std::exp(2.0 * s));
    const double hi = 1.0 / (1.0 + std::exp(-2.0 * s));
    const double c = std::cosh(s);
    const double w = h * kHalfPi * std::cosh(t) / (2.0 * c * c);
    if (!(w > 1e-20) || !(lo > 0.0) || !(hi > 0.0)) continue;
    u.push_back(hi);
    one_minus_u.push_back(lo);
    weight.push_back(w);
  }
}

}  // namespace fdcran
