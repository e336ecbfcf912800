// Copyright (C) 2026 The fdcran authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "beamforming.hpp"
#include "channel.hpp"
#include "config.hpp"
#include "geometry.hpp"

namespace fdcran {

/// Serving RRHs under single best association. Indices refer to realization.ul / .dl.
struct Selection {
  std::optional<std::size_t> ul_rrh;
  std::optional<std::size_t> dl_rrh;
  bool ul_set_empty = true;
  bool dl_set_empty = true;  // no DL RRH left in the selection region
};

struct SinrBreakdown {
  double signal = 0.0;
  double interference = 0.0;
  double sinr = 0.0;
  Scheme scheme = Scheme::kSra;
  Direction direction = Direction::kDownlink;
};

SinrBreakdown make_sinr(double signal, double interference, Scheme scheme, Direction direction);

/// Instantaneous rates in nats.
struct Rates {
  double ul = 0.0;
  double dl = 0.0;
  double sum() const { return ul + dl; }
};

/// UL RRH with the largest l(x)|g|^2, if any.
std::optional<std::size_t> best_uplink(const NetworkRealization& realization, const ChannelDraw& channels,
                                       double mu);

/// UL RRH by l(x)|g|^2, then the DL RRH by l(x)|h|^2 among DL points outside the
/// interference region around the UL RRH. No UL RRH means no interference region.
Selection select_sra(const NetworkRealization& realization, const ChannelDraw& channels,
                     const SystemConfig& config);

/// DL RRHs allowed to transmit under all-RRH association (outside the region
/// anchored on the best UL RRH).
std::vector<std::size_t> ara_dl_set(const NetworkRealization& realization, const ChannelDraw& channels,
                                    const SystemConfig& config);

/// Beamformers for the selected SRA pair. A missing side leaves its vector empty;
/// with no DL RRH the UL side is plain MRC.
BeamformerPair sra_beamformers(const NetworkRealization& realization, const ChannelDraw& channels,
                               const Scenario& scenario, const Selection& selection, Design design);

SinrBreakdown sinr_dl_sra(const NetworkRealization& realization, const ChannelDraw& channels,
                          const Scenario& scenario, const Selection& selection, const BeamformerPair& pair);
SinrBreakdown sinr_ul_sra(const NetworkRealization& realization, const ChannelDraw& channels,
                          const Scenario& scenario, const Selection& selection, const BeamformerPair& pair);

/// Every DL RRH in dl_set transmits with MRT.
SinrBreakdown sinr_dl_ara(const NetworkRealization& realization, const ChannelDraw& channels,
                          const Scenario& scenario, const std::vector<std::size_t>& dl_set);

/// Every UL RRH receives; with ZF each one nulls its nearest transmitting DL RRH.
SinrBreakdown sinr_ul_ara(const NetworkRealization& realization, const ChannelDraw& channels,
                          const Scenario& scenario, const std::vector<std::size_t>& dl_set, Design design);

/// Throws UnsupportedError for OPTIMAL with ARA.
Rates instantaneous_rates(const NetworkRealization& realization, const ChannelDraw& channels,
                          const Scenario& scenario, Scheme scheme, Design design);

/// Time-shared half-duplex rates with MRC/MRT: tau ln(1 + SNR_d), (1 - tau) ln(1 + SNR_u).
/// ARA sums over every RRH; SRA uses the single best RRH in each direction.
Rates hd_rates(const NetworkRealization& realization, const ChannelDraw& channels, const Scenario& scenario,
               Scheme scheme = Scheme::kAra);

}  // namespace fdcran
