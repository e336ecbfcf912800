// Copyright (C) 2026 The fdcran authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <vector>

#include "analytic.hpp"
#include "association.hpp"
#include "beamforming.hpp"
#include "channel.hpp"
#include "doctest.h"
#include "experiments.hpp"
#include "geometry.hpp"
#include "montecarlo.hpp"
#include "support.hpp"

using namespace fdcran;
using fdcran::test::reference_config;

namespace {

bool same(const RateEstimate& a, const RateEstimate& b) {
  return a.mean == b.mean && a.std_error == b.std_error && a.trials == b.trials;
}

bool same(const RatePair& a, const RatePair& b) { return same(a.ul, b.ul) && same(a.dl, b.dl) && same(a.sum, b.sum); }

}  // namespace

TEST_CASE("summary statistics") {
  const std::vector<double> v = {1.0, 2.0, 3.0, 4.0};
  const RateEstimate e = summarize(v, Direction::kUplink);
  CHECK(e.mean == 2.5);
  CHECK(e.std_error == doctest::Approx(std::sqrt(5.0 / 3.0) / 2.0).epsilon(1e-14));
  CHECK(e.trials == 4);
  CHECK(e.direction == Direction::kUplink);

  // pairwise summation keeps 1e6 copies of 0.1 at full precision
  const std::vector<double> tenth(1000000, 0.1);
  CHECK(std::abs(pairwise_sum(tenth) - 100000.0) < 1e-8);
  CHECK(pairwise_sum(std::vector<double>{}) == 0.0);
}

TEST_CASE("empty network gives zero rates") {
  SystemConfig c = reference_config();
  c.lambda = 0.0;
  for (Scheme s : {Scheme::kSra, Scheme::kAra}) {
    const RatePair r = estimate(c, s, Design::kMrcMrt, 100);
    CHECK(r.ul.mean == 0.0);
    CHECK(r.dl.mean == 0.0);
    CHECK(r.sum.std_error == 0.0);
  }
}

TEST_CASE("standard error shrinks as one over the square root of trials") {
  const SystemConfig c = reference_config();
  const RatePair a = estimate(c, Scheme::kSra, Design::kZfMrt, 2000);
  const RatePair b = estimate(c, Scheme::kSra, Design::kZfMrt, 8000);
  CHECK(a.sum.std_error / b.sum.std_error == doctest::Approx(2.0).epsilon(0.2));
  CHECK(b.sum.trials == 8000);
}

TEST_CASE("SRA ZF uplink agrees with the closed form") {
  const SystemConfig c = reference_config();
  const RatePair mc = estimate(c, Scheme::kSra, Design::kZfMrt, 20000);
  const double exact = ul_rate_zf(c).value;
  CHECK(std::abs(mc.ul.mean - exact) <= std::max(0.02 * exact, 3.0 * mc.ul.std_error));
  const double dl = dl_rate_sra(c).value;
  CHECK(std::abs(mc.dl.mean - dl) <= std::max(0.02 * dl, 3.0 * mc.dl.std_error));
}

TEST_CASE("results do not depend on the worker count") {
  SystemConfig c = reference_config();
  c.M = 3;
  const std::vector<DesignKey> keys = {{Scheme::kSra, Design::kOptimal, Duplex::kFull},
                                       {Scheme::kAra, Design::kZfMrt, Duplex::kFull},
                                       {Scheme::kSra, Design::kMrcMrt, Duplex::kHalf}};
  setenv("FDCRAN_THREADS", "1", 1);
  const auto one = estimate_many(c, keys, 500);
  setenv("FDCRAN_THREADS", "3", 1);
  CHECK(worker_count() == 3);
  const auto three = estimate_many(c, keys, 500);
  setenv("FDCRAN_THREADS", "8", 1);
  const auto eight = estimate_many(c, keys, 500);
  unsetenv("FDCRAN_THREADS");
  for (std::size_t i = 0; i < keys.size(); ++i) {
    CHECK(same(one[i], three[i]));
    CHECK(same(one[i], eight[i]));
  }
}

TEST_CASE("design order does not change any estimate") {
  const SystemConfig c = reference_config();
  std::vector<DesignKey> keys = rate_region_keys();
  const auto forward = estimate_many(c, keys, 300);
  std::reverse(keys.begin(), keys.end());
  const auto backward = estimate_many(c, keys, 300);
  for (std::size_t i = 0; i < keys.size(); ++i) CHECK(same(forward[i], backward[keys.size() - 1 - i]));
  // a key evaluated alone sees the same trials
  const RatePair alone = estimate(c, keys[2].scheme, keys[2].design, 300, keys[2].duplex);
  CHECK(same(alone, backward[2]));
}

TEST_CASE("rate region endpoints and ordering") {
  SystemConfig c = reference_config();
  c.M = 3;
  const RateTable t = rate_region(c, {0.0, 0.5, 1.0}, 400);
  CHECK(t.x_name == "p_d");
  CHECK(t.rows.size() == 3 * rate_region_keys().size());
  double opt = 0.0, mrc = 0.0;
  for (const RateRow& row : t.rows) {
    if (row.x == 0.0) CHECK(row.rates.dl.mean == 0.0);
    if (row.x == 1.0) CHECK(row.rates.ul.mean == 0.0);
    if (row.x != 0.5 || row.key.scheme != Scheme::kSra || row.key.duplex != Duplex::kFull) continue;
    if (row.key.design == Design::kOptimal) opt = row.rates.sum.mean;
    if (row.key.design == Design::kMrcMrt) mrc = row.rates.sum.mean;
  }
  CHECK(opt >= mrc - 1e-6);
  CHECK(mrc > 0.0);
}

TEST_CASE("phi sweep at a closed interference region") {
  const SystemConfig c = reference_config();
  const RateTable t = phi_sweep(c, {0.0, std::numbers::pi}, 300);
  CHECK(t.x_name == "phi");
  CHECK(t.rows.size() == 2 * phi_sweep_keys().size());
  for (const RateRow& row : t.rows) {
    if (row.x != std::numbers::pi) continue;
    CHECK(row.rates.dl.mean == 0.0);
    CHECK(row.rates.sum.mean == doctest::Approx(row.rates.ul.mean).epsilon(1e-14));
  }
}

TEST_CASE("FD over HD gain") {
  SystemConfig c = reference_config();
  c.M = 3;
  const std::vector<double> grid = {0.0, 0.3, 0.5, 0.7, 1.0};
  const auto gains = fd_hd_gain(c, grid, 400);
  REQUIRE(gains.size() == 3);
  double opt = 0.0, zf = 0.0;
  for (const GainEntry& g : gains) {
    CHECK(g.p_d > 0.0);
    CHECK(g.p_d < 1.0);
    if (g.design == Design::kOptimal) opt = g.ratio;
    if (g.design == Design::kZfMrt) zf = g.ratio;
  }
  CHECK(opt >= zf - 1e-9);

  // Strong loopback: still a finite ratio.
  SystemConfig loud = c;
  loud.sigma_li_dbm = 0.0;
  for (const GainEntry& g : fd_hd_gain(loud, grid, 200)) {
    CHECK(std::isfinite(g.ratio));
    CHECK(g.ratio > 0.0);
  }

  // Negligible loopback: FD with interference handling beats time sharing.
  SystemConfig quiet = c;
  quiet.sigma_li_dbm = -200.0;
  for (const GainEntry& g : fd_hd_gain(quiet, grid, 400))
    if (g.design != Design::kMrcMrt) CHECK(g.ratio >= 1.0);
}

TEST_SUITE("properties") {
  TEST_CASE("trial results are reproducible in isolation") {
    SystemConfig c = reference_config();
    c.M = 3;
    const Scenario sc(c);
    const auto keys = rate_region_keys();
    for (std::uint64_t t : {0ULL, 17ULL, 4096ULL}) {
      const auto a = simulate_trial(sc, keys, t);
      const auto b = simulate_trial(sc, keys, t);
      REQUIRE(a.size() == keys.size());
      for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].ul == b[i].ul);
        CHECK(a[i].dl == b[i].dl);
      }
    }
  }

  TEST_CASE("OPTIMAL dominates per trial under common random numbers") {
    SystemConfig c = reference_config();
    c.M = 3;
    const Scenario sc(c);
    const std::vector<DesignKey> keys = {{Scheme::kSra, Design::kOptimal, Duplex::kFull},
                                         {Scheme::kSra, Design::kZfMrt, Duplex::kFull},
                                         {Scheme::kSra, Design::kMrcMrt, Duplex::kFull}};
    for (std::uint64_t t = 0; t < 300; ++t) {
      const auto r = simulate_trial(sc, keys, t);
      CHECK(r[0].sum() >= r[1].sum() - 1e-6);
      CHECK(r[0].sum() >= r[2].sum() - 1e-6);
    }
  }

  TEST_CASE("estimates are invariant to the order of trials") {
    const SystemConfig c = reference_config();
    const Scenario sc(c);
    const std::vector<DesignKey> keys = {{Scheme::kSra, Design::kZfMrt, Duplex::kFull}};
    constexpr std::uint64_t n = 1000;
    std::vector<double> sums(n);
    for (std::uint64_t t = 0; t < n; ++t) sums[t] = simulate_trial(sc, keys, t)[0].sum();
    const RatePair direct = estimate(c, Scheme::kSra, Design::kZfMrt, n);
    CHECK(summarize(sums, Direction::kSum).mean == direct.sum.mean);
    Stream s = fdcran::test::stream(40);
    std::shuffle(sums.begin(), sums.end(), s.engine());
    const RateEstimate shuffled = summarize(sums, Direction::kSum);
    CHECK(shuffled.mean == doctest::Approx(direct.sum.mean).epsilon(1e-13));
    CHECK(shuffled.std_error == doctest::Approx(direct.sum.std_error).epsilon(1e-10));
  }

  TEST_CASE("without loopback or inter-RRH interference FD beats HD on every draw") {
    // Fixture: sigma_li = 0 and the UL SINR taken without the inter-RRH term.
    SystemConfig c = reference_config();
    c.M = 3;
    c.phi = 0.0;
    c.tau = 0.5;
    const Scenario sc(c);
    for (std::uint64_t t = 0; t < 500; ++t) {
      const TrialStreams streams(c.seed, t);
      Stream geometry = streams.stream(StreamTag::kGeometry);
      const NetworkRealization r = sample_realization(c, geometry);
      const ChannelDraw ch(r, c.M, 0.0, streams);
      for (Scheme scheme : {Scheme::kSra, Scheme::kAra}) {
        const Rates hd = hd_rates(r, ch, sc, scheme);
        if (scheme == Scheme::kAra) {
          const auto set = ara_dl_set(r, ch, c);
          const double dl = set.empty() ? 0.0 : std::log1p(sinr_dl_ara(r, ch, sc, set).sinr);
          const double ul = r.ul.empty() ? 0.0 : std::log1p(sinr_ul_ara(r, ch, sc, set, Design::kMrcMrt).signal);
          CHECK(dl + ul >= hd.sum() - 1e-12);
          continue;
        }
        const Selection sel = select_sra(r, ch, c);
        for (Design design : {Design::kMrcMrt, Design::kZfMrt, Design::kOptimal}) {
          double fd = 0.0;
          if (design == Design::kOptimal && sel.ul_rrh && sel.dl_rrh) {
            // no inter-RRH coupling: a3 = 0
            const double a1 = sc.power.P_b * path_loss(r.dl[*sel.dl_rrh].pos, c.mu);
            const double a2 = sc.power.P_u * path_loss(r.ul[*sel.ul_rrh].pos, c.mu);
            fd = solve_optimal_pair(ch.downlink(*sel.dl_rrh), ch.uplink(*sel.ul_rrh),
                                    ch.inter_rrh(*sel.ul_rrh, *sel.dl_rrh), a1, a2, 0.0)
                     .sum_rate;
          } else {
            // with nothing to cancel, ZF reduces to MRC
            const BeamformerPair pair = sra_beamformers(r, ch, sc, sel, Design::kMrcMrt);
            if (sel.dl_rrh) fd += std::log1p(sinr_dl_sra(r, ch, sc, sel, pair).sinr);
            if (sel.ul_rrh) fd += std::log1p(sinr_ul_sra(r, ch, sc, sel, pair).signal);
          }
          CHECK(fd >= hd.sum() - 1e-9);
        }
      }
    }
  }
}
