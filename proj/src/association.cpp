// Copyright (C) 2026 The fdcran authors
// SPDX-License-Identifier: Apache-2.0

#include "association.hpp"

#include <cmath>
#include <limits>

namespace fdcran {

namespace {

std::optional<std::size_t> argmax_gain(const std::vector<Rrh>& points, const std::vector<std::size_t>& candidates,
                                       const auto& channel_of, double mu) {
  std::optional<std::size_t> best;
  double best_gain = -1.0;
  for (std::size_t i : candidates) {
    const double gain = path_loss(points[i].pos, mu) * channel_of(i).squaredNorm();
    if (gain > best_gain) {
      best_gain = gain;
      best = i;
    }
  }
  return best;
}

std::vector<std::size_t> all_indices(std::size_t n) {
  std::vector<std::size_t> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = i;
  return out;
}

double li_power(const ChannelDraw& channels, const Scenario& s) {
  return s.power.P_u * std::norm(channels.loopback());
}

}  // namespace

SinrBreakdown make_sinr(double signal, double interference, Scheme scheme, Direction direction) {
  return {signal, interference, signal / (interference + 1.0), scheme, direction};
}

std::optional<std::size_t> best_uplink(const NetworkRealization& realization, const ChannelDraw& channels,
                                       double mu) {
  return argmax_gain(realization.ul, all_indices(realization.ul.size()),
                     [&](std::size_t j) -> const CVec& { return channels.uplink(j); }, mu);
}

Selection select_sra(const NetworkRealization& realization, const ChannelDraw& channels,
                     const SystemConfig& config) {
  Selection sel;
  sel.ul_rrh = best_uplink(realization, channels, config.mu);
  sel.ul_set_empty = !sel.ul_rrh.has_value();
  const auto region = sel.ul_rrh ? selection_region(realization.dl, realization.ul[*sel.ul_rrh].pos, config.phi)
                                 : all_indices(realization.dl.size());
  sel.dl_rrh = argmax_gain(realization.dl, region,
                           [&](std::size_t i) -> const CVec& { return channels.downlink(i); }, config.mu);
  sel.dl_set_empty = !sel.dl_rrh.has_value();
  return sel;
}

std::vector<std::size_t> ara_dl_set(const NetworkRealization& realization, const ChannelDraw& channels,
                                    const SystemConfig& config) {
  const auto anchor = best_uplink(realization, channels, config.mu);
  if (!anchor) return all_indices(realization.dl.size());
  return selection_region(realization.dl, realization.ul[*anchor].pos, config.phi);
}

BeamformerPair sra_beamformers(const NetworkRealization& realization, const ChannelDraw& channels,
                               const Scenario& scenario, const Selection& selection, Design design) {
  BeamformerPair pair;
  if (selection.dl_rrh) pair.w_t = mrt(channels.downlink(*selection.dl_rrh));
  if (!selection.ul_rrh) return pair;
  const std::size_t p = *selection.ul_rrh;
  const CVec& g = channels.uplink(p);
  if (!selection.dl_rrh) {
    pair.w_r = mrc(g);
    return pair;
  }
  const std::size_t q = *selection.dl_rrh;
  const CVec& h = channels.downlink(q);
  switch (design) {
    case Design::kMrcMrt:
      pair.w_r = mrc(g);
      break;
    case Design::kZfMrt:
      pair.w_r = zf_receive(g, channels.inter_rrh(p, q), h);
      break;
    case Design::kOptimal: {
      const auto& c = scenario.config;
      const auto& pw = scenario.power;
      const double a1 = pw.P_b * path_loss(realization.dl[q].pos, c.mu) / (li_power(channels, scenario) + 1.0);
      const double a2 = pw.P_u * path_loss(realization.ul[p].pos, c.mu);
      const double a3 = pw.P_b * path_loss(realization.ul[p].pos, realization.dl[q].pos, c.mu);
      pair = solve_optimal_pair(h, g, channels.inter_rrh(p, q), a1, a2, a3).pair;
      break;
    }
  }
  return pair;
}

SinrBreakdown sinr_dl_sra(const NetworkRealization& realization, const ChannelDraw& channels,
                          const Scenario& scenario, const Selection& selection, const BeamformerPair& pair) {
  const double interference = li_power(channels, scenario);
  if (!selection.dl_rrh) return make_sinr(0.0, interference, Scheme::kSra, Direction::kDownlink);
  const std::size_t q = *selection.dl_rrh;
  const double signal = scenario.power.P_b * path_loss(realization.dl[q].pos, scenario.config.mu) *
                        std::norm(channels.downlink(q).dot(pair.w_t));
  return make_sinr(signal, interference, Scheme::kSra, Direction::kDownlink);
}

SinrBreakdown sinr_ul_sra(const NetworkRealization& realization, const ChannelDraw& channels,
                          const Scenario& scenario, const Selection& selection, const BeamformerPair& pair) {
  if (!selection.ul_rrh) return make_sinr(0.0, 0.0, Scheme::kSra, Direction::kUplink);
  const std::size_t p = *selection.ul_rrh;
  const double mu = scenario.config.mu;
  const double signal = scenario.power.P_u * path_loss(realization.ul[p].pos, mu) *
                        std::norm(pair.w_r.dot(channels.uplink(p)));
  double interference = 0.0;
  if (selection.dl_rrh) {
    const std::size_t q = *selection.dl_rrh;
    const CVec u = channels.inter_rrh(p, q) * pair.w_t;
    interference = scenario.power.P_b * path_loss(realization.ul[p].pos, realization.dl[q].pos, mu) *
                   std::norm(pair.w_r.dot(u));
  }
  return make_sinr(signal, interference, Scheme::kSra, Direction::kUplink);
}

SinrBreakdown sinr_dl_ara(const NetworkRealization& realization, const ChannelDraw& channels,
                          const Scenario& scenario, const std::vector<std::size_t>& dl_set) {
  double signal = 0.0;
  for (std::size_t i : dl_set) {
    // |h^H mrt(h)|^2 = |h|^2
    signal += scenario.power.P_b * path_loss(realization.dl[i].pos, scenario.config.mu) *
              channels.downlink(i).squaredNorm();
  }
  return make_sinr(signal, li_power(channels, scenario), Scheme::kAra, Direction::kDownlink);
}

SinrBreakdown sinr_ul_ara(const NetworkRealization& realization, const ChannelDraw& channels,
                          const Scenario& scenario, const std::vector<std::size_t>& dl_set, Design design) {
  if (design == Design::kOptimal) throw UnsupportedError("OPTIMAL is defined for SRA only");
  const double mu = scenario.config.mu;
  const auto& pw = scenario.power;

  std::vector<CVec> w_t;
  w_t.reserve(dl_set.size());
  for (std::size_t i : dl_set) w_t.push_back(mrt(channels.downlink(i)));

  double signal = 0.0, interference = 0.0;
  for (std::size_t j = 0; j < realization.ul.size(); ++j) {
    const Vec2& xj = realization.ul[j].pos;
    const CVec& g = channels.uplink(j);
    CVec w_r;
    std::size_t nearest = 0;
    if (design == Design::kZfMrt && !dl_set.empty()) {
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t k = 0; k < dl_set.size(); ++k) {
        const double d = (realization.dl[dl_set[k]].pos - xj).squaredNorm();
        if (d < best) {
          best = d;
          nearest = k;
        }
      }
      w_r = zf_receive(g, channels.inter_rrh(j, dl_set[nearest]), channels.downlink(dl_set[nearest]));
    } else {
      w_r = mrc(g);
    }
    signal += pw.P_u * path_loss(xj, mu) * std::norm(w_r.dot(g));
    for (std::size_t k = 0; k < dl_set.size(); ++k) {
      const std::size_t i = dl_set[k];
      const CVec u = channels.inter_rrh(j, i) * w_t[k];
      interference += pw.P_b * path_loss(xj, realization.dl[i].pos, mu) * std::norm(w_r.dot(u));
    }
  }
  return make_sinr(signal, interference, Scheme::kAra, Direction::kUplink);
}

Rates instantaneous_rates(const NetworkRealization& realization, const ChannelDraw& channels,
                          const Scenario& scenario, Scheme scheme, Design design) {
  Rates r;
  if (scheme == Scheme::kAra) {
    if (design == Design::kOptimal) throw UnsupportedError("OPTIMAL is defined for SRA only");
    const auto dl_set = ara_dl_set(realization, channels, scenario.config);
    if (!dl_set.empty()) r.dl = std::log1p(sinr_dl_ara(realization, channels, scenario, dl_set).sinr);
    if (!realization.ul.empty()) r.ul = std::log1p(sinr_ul_ara(realization, channels, scenario, dl_set, design).sinr);
    return r;
  }
  const Selection sel = select_sra(realization, channels, scenario.config);
  const BeamformerPair pair = sra_beamformers(realization, channels, scenario, sel, design);
  if (sel.dl_rrh) r.dl = std::log1p(sinr_dl_sra(realization, channels, scenario, sel, pair).sinr);
  if (sel.ul_rrh) r.ul = std::log1p(sinr_ul_sra(realization, channels, scenario, sel, pair).sinr);
  return r;
}

Rates hd_rates(const NetworkRealization& realization, const ChannelDraw& channels, const Scenario& scenario,
               Scheme scheme) {
  const double mu = scenario.config.mu;
  const double tau = scenario.config.tau;
  double snr_d = 0.0, snr_u = 0.0;
  for (std::size_t i = 0; i < realization.dl.size(); ++i) {
    const double s = scenario.power.P_b * path_loss(realization.dl[i].pos, mu) * channels.downlink(i).squaredNorm();
    snr_d = scheme == Scheme::kAra ? snr_d + s : std::max(snr_d, s);
  }
  for (std::size_t j = 0; j < realization.ul.size(); ++j) {
    const double s = scenario.power.P_u * path_loss(realization.ul[j].pos, mu) * channels.uplink(j).squaredNorm();
    snr_u = scheme == Scheme::kAra ? snr_u + s : std::max(snr_u, s);
  }
  return {(1.0 - tau) * std::log1p(snr_u), tau * std::log1p(snr_d)};
}

}  // namespace fdcran
