// Copyright (C) 2026 The fdcran authors
// SPDX-License-Identifier: Apache-2.0

#include "geometry.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <random>

namespace fdcran {

NetworkRealization sample_realization(const SystemConfig& config, Stream& rng) {
  NetworkRealization out;
  const double mean = config.lambda * std::numbers::pi * config.R * config.R;
  if (mean <= 0.0) return out;

  std::poisson_distribution<std::uint64_t> count_dist(mean);
  const std::uint64_t n = count_dist(rng.engine());
  out.dl.reserve(static_cast<std::size_t>(n * config.p_d) + 4);
  out.ul.reserve(static_cast<std::size_t>(n * (1.0 - config.p_d)) + 4);
  for (std::uint64_t k = 0; k < n; ++k) {
    const double r = config.R * std::sqrt(rng.uniform());
    const double theta = 2.0 * std::numbers::pi * rng.uniform();
    const bool downlink = rng.uniform() < config.p_d;
    Rrh rrh{Vec2(r * std::cos(theta), r * std::sin(theta)), k};
    (downlink ? out.dl : out.ul).push_back(rrh);
  }
  return out;
}

std::vector<std::size_t> selection_region(const std::vector<Rrh>& dl, const Vec2& anchor, double phi) {
  if (!(phi >= 0.0 && phi <= std::numbers::pi)) {
    throw ConfigError("phi", "interference-region half-angle must lie in [0, pi]");
  }
  std::vector<std::size_t> kept;
  kept.reserve(dl.size());
  if (phi >= std::numbers::pi) return kept;
  for (std::size_t i = 0; i < dl.size(); ++i) {
    if (phi > 0.0) {
      const Vec2& x = dl[i].pos;
      const double cross = anchor.x() * x.y() - anchor.y() * x.x();
      const double dot = anchor.dot(x);
      if (std::abs(std::atan2(cross, dot)) <= phi) continue;
    }
    kept.push_back(i);
  }
  return kept;
}

std::vector<Rrh> apply_interference_region(const std::vector<Rrh>& dl, const Vec2& anchor, double phi) {
  std::vector<Rrh> out;
  for (std::size_t i : selection_region(dl, anchor, phi)) out.push_back(dl[i]);
  return out;
}

double path_loss(const Vec2& x, const Vec2& y, double mu) {
  const double d = std::max((x - y).norm(), kMinDistance);
  return std::pow(d, -mu);
}

double disc_pair_distance_pdf(double r, double R) {
  if (r <= 0.0 || r >= 2.0 * R) return 0.0;
  const double u = r / (2.0 * R);
  return (2.0 * r / (R * R)) *
         ((2.0 / std::numbers::pi) * std::acos(u) - (r / (std::numbers::pi * R)) * std::sqrt(1.0 - u * u));
}

void write_realization_csv(std::ostream& out, const NetworkRealization& realization) {
  out << "x,y,role\n";
  char buf[96];
  auto emit = [&](const Rrh& r, const char* role) {
    std::snprintf(buf, sizeof buf, "%.9g,%.9g,%s\n", r.pos.x(), r.pos.y(), role);
    out << buf;
  };
  for (const auto& r : realization.ul) emit(r, "UL");
  for (const auto& r : realization.dl) emit(r, "DL");
}

}  // namespace fdcran
