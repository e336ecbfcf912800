// Copyright (C) 2026 The fdcran authors
// SPDX-License-Identifier: Apache-2.0

#include <Eigen/Dense>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <numbers>
#include <vector>

#include "beamforming.hpp"
#include "doctest.h"
#include "oracles.hpp"
#include "support.hpp"
#include "validation.hpp"

using namespace fdcran;
using namespace fdcran::test;

namespace {

double ul_sinr(const CVec& w, const CVec& g, const CVec& u, double a3) {
  return std::norm(w.dot(g)) / (a3 * std::norm(w.dot(u)) + w.squaredNorm());
}

double alpha_mrt(const Instance& in) { return suppressed_interference(mrt(in.h), in.g, in.H, in.a3); }

}  // namespace

TEST_CASE("MRT and MRC") {
  CVec h(2);
  h << 1.0, 0.0;
  CHECK(mrt(h).isApprox(h));
  h << 3.0, cd(0.0, 4.0);
  const CVec w = mrt(h);
  CHECK(std::abs(w[0] - cd(0.6, 0.0)) < 1e-15);
  CHECK(std::abs(w[1] - cd(0.0, 0.8)) < 1e-15);
  CHECK(std::norm(h.dot(w)) == doctest::Approx(h.squaredNorm()).epsilon(1e-15));
  const CVec r = mrc(h);
  CHECK(std::abs(r[1] - cd(0.0, 0.8)) < 1e-15);
  CHECK(std::norm(r.dot(h)) == doctest::Approx(h.squaredNorm()).epsilon(1e-15));
  CHECK_THROWS_AS(mrt(CVec::Zero(3)), DegenerateChannelError);
  CHECK_THROWS_AS(mrc(CVec::Zero(2)), DegenerateChannelError);
}

TEST_CASE("zero-forcing receive") {
  CMat I = CMat::Identity(2, 2);
  CVec h(2), g(2);
  h << 1.0, 0.0;
  g << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  const CVec w = zf_receive(g, I, h);
  CHECK(std::abs(w[0]) < 1e-15);
  CHECK(std::abs(w[1] - cd(1.0, 0.0)) < 1e-15);

  // g already orthogonal to the interference direction
  g << 0.0, cd(0.0, 2.0);
  CHECK(zf_receive(g, I, h).isApprox(g / g.norm(), 1e-15));

  CVec one(1);
  one << 1.0;
  CHECK_THROWS_AS(zf_receive(one, CMat::Identity(1, 1), one), InfeasibleError);
  CHECK_THROWS_AS(zf_receive(g, CMat::Zero(2, 2), h), DegenerateChannelError);
  g << 2.0, 0.0;
  CHECK_THROWS_AS(zf_receive(g, I, h), DegenerateChannelError);
}

TEST_CASE("zero-forcing gain is Gamma(M - 1)") {
  constexpr int n = 100000;
  for (int M : {2, 3}) {
    std::vector<double> gain(n);
    for (int t = 0; t < n; ++t) {
      Stream s = stream(21, t);
      const CVec g = random_vec(s, M), h = random_vec(s, M);
      const CMat H = random_mat(s, M);
      gain[t] = std::norm(zf_receive(g, H, h).dot(g));
    }
    CHECK(ks_distance(gain, [M](double t) { return boost::math::gamma_p(M - 1.0, t); }) < 0.01);
  }
}

TEST_CASE("MMSE receive") {
  for (int k = 0; k < 50; ++k) {
    Stream s = stream(22, k);
    const CVec g = random_vec(s, 3), w_t = unit_vec(s, 3);
    const CMat H = random_mat(s, 3);
    CHECK(mmse_receive(g, H, w_t, 0.0).isApprox(mrc(g), 1e-15));

    const double a3 = 0.1 + 10.0 * s.uniform();
    const CVec u = H * w_t;
    const CMat K = a3 * u * u.adjoint() + CMat::Identity(3, 3);
    const CVec direct = K.inverse() * g;
    const CVec w = mmse_receive(g, H, w_t, a3);
    // equal up to a positive scale
    CHECK((direct / direct.norm() - w).norm() < 1e-12);

    const double best = ul_sinr(w, g, u, a3);
    for (int r = 0; r < 1000; ++r) CHECK(ul_sinr(unit_vec(s, 3), g, u, a3) <= best * (1.0 + 1e-12));
  }
}

TEST_CASE("f(alpha) special points") {
  for (int k = 0; k < 30; ++k) {
    const Instance in = random_instance(23, k, 2 + k % 3);
    const double amax = alpha_max(in.g, in.H, in.a3);
    // The interference-maximizing direction is Q^-1 c with c = H^H g, Q = I + a3 H^H H.
    const int M = static_cast<int>(in.h.size());
    const CMat Q = CMat::Identity(M, M) + in.a3 * in.H.adjoint() * in.H;
    const CVec w_max = Q.inverse() * (in.H.adjoint() * in.g);
    CHECK(suppressed_interference(w_max, in.g, in.H, in.a3) == doctest::Approx(amax).epsilon(1e-10));

    const FAlpha top = solve_f_alpha(amax, in.h, in.g, in.H, in.a3);
    CHECK(top.value == doctest::Approx(std::norm(in.h.dot(w_max)) / w_max.squaredNorm()).epsilon(1e-8));
    CHECK(std::abs(top.w_t.norm() - 1.0) < 1e-12);

    CHECK_THROWS_AS(solve_f_alpha(amax * 1.01 + 1e-9, in.h, in.g, in.H, in.a3), InfeasibleError);
    CHECK_THROWS_AS(solve_f_alpha(-0.1, in.h, in.g, in.H, in.a3), InfeasibleError);

    const FAlpha free = solve_f_alpha(0.0, in.h, in.g, in.H, 0.0);
    CHECK(free.value == doctest::Approx(in.h.squaredNorm()).epsilon(1e-12));
    CHECK(std::norm(free.w_t.dot(mrt(in.h))) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(alpha_max(in.g, in.H, 0.0) == 0.0);
  }
}

TEST_CASE("f(alpha) attains its constraint and matches a sphere grid (M = 2)") {
  constexpr int kTheta = 1500, kPhase = 3000;
  for (int k = 0; k < 6; ++k) {
    const Instance in = random_instance(24, k, 2);
    const double amax = alpha_max(in.g, in.H, in.a3);
    std::vector<double> constraint, gain;
    constraint.reserve(static_cast<std::size_t>(kTheta + 1) * kPhase);
    gain.reserve(constraint.capacity());
    for (int i = 0; i <= kTheta; ++i) {
      const double t = 0.5 * std::numbers::pi * i / kTheta;
      for (int j = 0; j < kPhase; ++j) {
        CVec w(2);
        w << std::cos(t), std::polar(std::sin(t), 2.0 * std::numbers::pi * j / kPhase);
        constraint.push_back(suppressed_interference(w, in.g, in.H, in.a3));
        gain.push_back(std::norm(in.h.dot(w)));
      }
    }
    for (double frac : {0.0, 0.2, 0.5, 0.8, 0.95}) {
      const double alpha = frac * amax;
      const FAlpha f = solve_f_alpha(alpha, in.h, in.g, in.H, in.a3);
      CHECK(suppressed_interference(f.w_t, in.g, in.H, in.a3) == doctest::Approx(alpha).epsilon(1e-8).scale(amax));
      CHECK(std::norm(in.h.dot(f.w_t)) == doctest::Approx(f.value).epsilon(1e-10));
      if (frac == 0.0) {
        // a single feasible direction, orthogonal to c = H^H g; a band around it
        // would admit steeply better points, so compare with the projection
        const CVec c = in.H.adjoint() * in.g;
        CHECK(f.value == doctest::Approx(in.h.squaredNorm() - std::norm(c.dot(in.h)) / c.squaredNorm()).epsilon(1e-9));
        continue;
      }
      double grid = 0.0;
      const double band = 1e-4 * amax;
      for (std::size_t p = 0; p < gain.size(); ++p)
        if (std::abs(constraint[p] - alpha) <= band) grid = std::max(grid, gain[p]);
      CHECK(rel_gap(grid, f.value) < 1e-3);
    }
  }
}

TEST_CASE("optimal pair: decoupled and single-antenna cases") {
  const Instance in = random_instance(25, 0, 3);
  const OptimalSolveReport r = solve_optimal_pair(in.h, in.g, in.H, in.a1, in.a2, 0.0);
  CHECK(r.pair.w_t.isApprox(mrt(in.h), 1e-15));
  CHECK(r.pair.w_r.isApprox(mrc(in.g), 1e-15));
  CHECK(r.sum_rate == doctest::Approx(std::log1p(in.a1 * in.h.squaredNorm()) +
                                      std::log1p(in.a2 * in.g.squaredNorm()))
                          .epsilon(1e-14));

  const Instance one = random_instance(25, 1, 1);
  const OptimalSolveReport r1 = solve_optimal_pair(one.h, one.g, one.H, one.a1, one.a2, one.a3);
  CHECK(r1.sum_rate == doctest::Approx(pair_sum_rate({mrt(one.h), mrc(one.g)}, one.h, one.g, one.H, one.a1,
                                                     one.a2, one.a3)));
}

TEST_CASE("optimal pair reports a consistent solution") {
  for (int k = 0; k < 200; ++k) {
    const Instance in = random_instance(26, k, 2 + k % 3);
    const OptimalSolveReport r = solve_optimal_pair(in.h, in.g, in.H, in.a1, in.a2, in.a3);
    CHECK(std::abs(r.sum_rate - pair_sum_rate(r.pair, in.h, in.g, in.H, in.a1, in.a2, in.a3)) <= 1e-6);
    CHECK(r.alpha_star >= 0.0);
    CHECK(r.alpha_star <= alpha_max(in.g, in.H, in.a3) * (1.0 + 1e-9));
    CHECK(r.iterations >= 64);
  }
}

TEST_CASE("brute-force oracle") {
  const Instance in = random_instance(27, 0, 2);
  const double closed = std::log1p(in.a1 * in.h.squaredNorm()) + std::log1p(in.a2 * in.g.squaredNorm());
  const BruteForceResult b = brute_force_pair(in.h, in.g, in.H, in.a1, in.a2, 0.0, 64);
  CHECK(b.sum_rate <= closed + 1e-12);
  CHECK(b.sum_rate >= closed * (1.0 - 2e-3));

  for (int k = 0; k < 5; ++k) {
    const Instance r = random_instance(27, k + 1, 2);
    double previous = -1.0;
    for (int n : {4, 8, 16, 32}) {
      const double v = brute_force_pair(r.h, r.g, r.H, r.a1, r.a2, r.a3, n).sum_rate;
      CHECK(v >= previous);
      previous = v;
    }
  }
  const Instance three = random_instance(27, 9, 3);
  CHECK_THROWS_AS(brute_force_pair(three.h, three.g, three.H, 1.0, 1.0, 1.0, 8), UnsupportedError);
}

TEST_CASE("optimal pair agrees with the brute-force oracle (M = 2)") {
  for (int k = 0; k < 20; ++k) {
    const Instance in = random_instance(28, k, 2);
    const OptimalSolveReport r = solve_optimal_pair(in.h, in.g, in.H, in.a1, in.a2, in.a3);
    const BruteForceResult b = brute_force_pair(in.h, in.g, in.H, in.a1, in.a2, in.a3, 48);
    CHECK(b.sum_rate <= r.sum_rate + 1e-9);
    const double refined = refined_brute_force(in, 48);
    CHECK(rel_gap(refined, r.sum_rate) < 1e-2);
    CHECK(refined <= r.sum_rate + 1e-7);
  }
}

TEST_SUITE("properties") {
  TEST_CASE("returned beamformers are unit norm") {
    for (int k = 0; k < 200; ++k) {
      const int M = 2 + k % 3;
      const Instance in = random_instance(29, k, M);
      const OptimalSolveReport r = solve_optimal_pair(in.h, in.g, in.H, in.a1, in.a2, in.a3);
      for (const CVec& w : {mrt(in.h), mrc(in.g), zf_receive(in.g, in.H, in.h),
                            mmse_receive(in.g, in.H, mrt(in.h), in.a3), r.pair.w_t, r.pair.w_r,
                            solve_f_alpha(0.5 * alpha_max(in.g, in.H, in.a3), in.h, in.g, in.H, in.a3).w_t}) {
        CHECK(std::abs(w.norm() - 1.0) < 1e-12);
      }
    }
  }

  TEST_CASE("zero-forcing output is orthogonal to the interference") {
    for (int k = 0; k < 10000; ++k) {
      const int M = 2 + k % 3;
      Stream s = stream(30, k);
      const CVec g = random_vec(s, M), h = random_vec(s, M);
      const CMat H = random_mat(s, M);
      CHECK(std::abs(zf_receive(g, H, h).dot(H * h)) < 1e-10);
    }
  }

  TEST_CASE("phase invariance") {
    for (int k = 0; k < 100; ++k) {
      const Instance in = random_instance(31, k, 2 + k % 3);
      const cd ph = std::polar(1.0, 0.7 + k), pg = std::polar(1.0, -1.3 * k);
      const CVec h2 = in.h * ph, g2 = in.g * pg;
      const OptimalSolveReport a = solve_optimal_pair(in.h, in.g, in.H, in.a1, in.a2, in.a3);
      const OptimalSolveReport b = solve_optimal_pair(h2, g2, in.H, in.a1, in.a2, in.a3);
      CHECK(std::abs(a.sum_rate - b.sum_rate) <= 1e-12 * a.sum_rate);
      const BeamformerPair zf{mrt(in.h), zf_receive(in.g, in.H, in.h)};
      const BeamformerPair zf2{mrt(h2), zf_receive(g2, in.H, h2)};
      CHECK(std::abs(pair_sum_rate(zf, in.h, in.g, in.H, in.a1, in.a2, in.a3) -
                     pair_sum_rate(zf2, h2, g2, in.H, in.a1, in.a2, in.a3)) <= 1e-12 * a.sum_rate);
      const double alpha = 0.3 * alpha_max(in.g, in.H, in.a3);
      CHECK(solve_f_alpha(alpha, in.h, in.g, in.H, in.a3).value ==
            doctest::Approx(solve_f_alpha(alpha, h2, g2, in.H, in.a3).value).epsilon(1e-12));
    }
  }

  TEST_CASE("f(alpha) rises to the MRT point and falls after it") {
    for (int k = 0; k < 100; ++k) {
      const Instance in = random_instance(32, k, 2 + k % 3);
      const double amax = alpha_max(in.g, in.H, in.a3), amrt = alpha_mrt(in);
      CHECK(solve_f_alpha(amrt, in.h, in.g, in.H, in.a3).value ==
            doctest::Approx(in.h.squaredNorm()).epsilon(1e-9));
      double previous = -1.0;
      for (int i = 0; i <= 40; ++i) {
        const double a = amrt * i / 40.0;
        const double f = solve_f_alpha(a, in.h, in.g, in.H, in.a3).value;
        CHECK(f >= previous - 1e-9 * in.h.squaredNorm());
        previous = f;
      }
      for (int i = 1; i <= 40; ++i) {
        const double a = amrt + (amax - amrt) * i / 40.0;
        const double f = solve_f_alpha(a, in.h, in.g, in.H, in.a3).value;
        CHECK(f <= previous + 1e-9 * in.h.squaredNorm());
        previous = f;
      }
    }
  }

  TEST_CASE("optimal design dominates ZF/MRT and MRC/MRT") {
    for (int k = 0; k < 1000; ++k) {
      const Instance in = random_instance(33, k, 2 + k % 3);
      const double opt = solve_optimal_pair(in.h, in.g, in.H, in.a1, in.a2, in.a3).sum_rate;
      const double zf =
          pair_sum_rate({mrt(in.h), zf_receive(in.g, in.H, in.h)}, in.h, in.g, in.H, in.a1, in.a2, in.a3);
      const double mr = pair_sum_rate({mrt(in.h), mrc(in.g)}, in.h, in.g, in.H, in.a1, in.a2, in.a3);
      CHECK(opt >= zf - 1e-6);
      CHECK(opt >= mr - 1e-6);
    }
  }
}
