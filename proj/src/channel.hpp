// Copyright (C) 2026 The fdcran authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <vector>

#include "geometry.hpp"
#include "rng.hpp"
#include "types.hpp"

namespace fdcran {

/// Small-scale fading for one realization. h and g are drawn up front (selection
/// needs every norm); inter-RRH matrices are built on request from their own
/// (ul id, dl id) substream, so the order of requests never changes a value.
class ChannelDraw {
 public:
  /// li_gain is the variance of h_li (NormalizedConfig::li_gain()).
  ChannelDraw(const NetworkRealization& realization, int M, double li_gain, const TrialStreams& streams);

  int antennas() const { return M_; }

  /// DL channel of realization.dl[i]; UL channel of realization.ul[j].
  const CVec& downlink(std::size_t i) const { return h_[i]; }
  const CVec& uplink(std::size_t j) const { return g_[j]; }

  /// M x M channel from DL RRH dl[i] into UL RRH ul[j].
  CMat inter_rrh(std::size_t j, std::size_t i) const;

  /// Residual loopback coefficient at the user.
  cd loopback() const { return h_li_; }

 private:
  int M_;
  TrialStreams streams_;
  std::vector<std::uint64_t> dl_ids_;
  std::vector<std::uint64_t> ul_ids_;
  std::vector<CVec> h_;
  std::vector<CVec> g_;
  cd h_li_;
};

}  // namespace fdcran
