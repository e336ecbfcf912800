// Copyright (C) 2026 The fdcran authors
// SPDX-License-Identifier: Apache-2.0

#include "channel.hpp"

#include <cmath>

namespace fdcran {

ChannelDraw::ChannelDraw(const NetworkRealization& realization, int M, double li_gain,
                         const TrialStreams& streams)
    : M_(M), streams_(streams) {
  dl_ids_.reserve(realization.dl.size());
  h_.reserve(realization.dl.size());
  for (const auto& r : realization.dl) {
    dl_ids_.push_back(r.id);
    Stream s = streams_.stream(StreamTag::kDownlink, r.id);
    CVec v;
    s.fill_complex_normal(v, M);
    h_.push_back(v);
  }
  ul_ids_.reserve(realization.ul.size());
  g_.reserve(realization.ul.size());
  for (const auto& r : realization.ul) {
    ul_ids_.push_back(r.id);
    Stream s = streams_.stream(StreamTag::kUplink, r.id);
    CVec v;
    s.fill_complex_normal(v, M);
    g_.push_back(v);
  }
  Stream s = streams_.stream(StreamTag::kLoopback);
  h_li_ = s.complex_normal() * std::sqrt(std::max(li_gain, 0.0));
}

CMat ChannelDraw::inter_rrh(std::size_t j, std::size_t i) const {
  Stream s = streams_.stream(StreamTag::kInterRrh, ul_ids_[j], dl_ids_[i]);
  CMat H(M_, M_);
  for (int c = 0; c < M_; ++c)
    for (int r = 0; r < M_; ++r) H(r, c) = s.complex_normal();
  return H;
}

}  // namespace fdcran
