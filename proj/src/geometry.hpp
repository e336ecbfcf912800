// Copyright (C) 2026 The fdcran authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "config.hpp"
#include "rng.hpp"
#include "types.hpp"

namespace fdcran {

/// One remote radio head. `id` is its index in the unthinned point process, so
/// channel streams keyed by id survive a change of p_d.
struct Rrh {
  Vec2 pos;
  std::uint64_t id = 0;
};

/// One draw of the RRH layout. The user sits at the origin.
struct NetworkRealization {
  std::vector<Rrh> dl;
  std::vector<Rrh> ul;
};

/// Distances below this are clamped before computing path loss.
inline constexpr double kMinDistance = 1e-6;

/// Poisson(lambda pi R^2) points placed uniformly on the disc, each independently
/// assigned to the downlink with probability p_d.
NetworkRealization sample_realization(const SystemConfig& config, Stream& rng);

/// Indices of the DL points outside the sector of half-angle phi around the
/// user-to-anchor axis. phi == 0 keeps everything; phi == pi keeps nothing.
std::vector<std::size_t> selection_region(const std::vector<Rrh>& dl, const Vec2& anchor, double phi);

/// Same filter, returning the surviving points.
std::vector<Rrh> apply_interference_region(const std::vector<Rrh>& dl, const Vec2& anchor, double phi);

/// |x - y|^-mu, with the distance floored at kMinDistance.
double path_loss(const Vec2& x, const Vec2& y, double mu);
inline double path_loss(const Vec2& x, double mu) { return path_loss(x, Vec2::Zero(), mu); }

/// Density of the distance between two independent uniform points on a disc of radius R.
double disc_pair_distance_pdf(double r, double R);

/// CSV with columns x,y,role.
void write_realization_csv(std::ostream& out, const NetworkRealization& realization);

}  // namespace fdcran
