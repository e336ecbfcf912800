// Copyright (C) 2026 The fdcran authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <random>

#include "types.hpp"

namespace fdcran {

inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Mixes a key tuple into one 64-bit word; distinct tuples give unrelated words.
inline std::uint64_t mix_key(std::uint64_t acc, std::uint64_t word) {
  std::uint64_t s = acc ^ (word + 0x632be59bd9b4e019ULL + (acc << 6) + (acc >> 2));
  return splitmix64(s);
}

/// xoshiro256** (Blackman & Vigna). Cheap to seed, so every (trial, entity)
/// pair can own an independent stream.
class Xoshiro256 {
 public:
  using result_type = std::uint64_t;

  explicit Xoshiro256(std::uint64_t seed) {
    for (auto& w : s_) w = splitmix64(seed);
  }

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() {
    const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
  std::array<std::uint64_t, 4> s_{};
};

/// Purpose of a substream; part of the derivation key.
enum class StreamTag : std::uint64_t {
  kGeometry = 1,
  kDownlink = 2,
  kUplink = 3,
  kLoopback = 4,
  kInterRrh = 5,
  kSolver = 6,
  kAux = 7,
};

/// Source of a random stream: a plain engine plus a unit complex-normal helper.
class Stream {
 public:
  explicit Stream(std::uint64_t key) : engine_(key) {}

  Xoshiro256& engine() { return engine_; }
  double uniform() { return engine_.uniform(); }

  /// CN(0, 1): real and imaginary parts each N(0, 1/2).
  cd complex_normal() {
    return {normal_(engine_) * kHalfStd, normal_(engine_) * kHalfStd};
  }

  void fill_complex_normal(CVec& v, int size) {
    v.resize(size);
    for (int i = 0; i < size; ++i) v[i] = complex_normal();
  }

 private:
  static constexpr double kHalfStd = 0.70710678118654752440;
  Xoshiro256 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

/// Derives every per-trial stream from (seed, trial, tag, ids). Any stream can
/// be rebuilt in isolation, so values do not depend on evaluation order.
class TrialStreams {
 public:
  TrialStreams(std::uint64_t seed, std::uint64_t trial)
      : base_(mix_key(mix_key(0x243f6a8885a308d3ULL, seed), trial)) {}

  Stream stream(StreamTag tag) const { return Stream(mix_key(base_, static_cast<std::uint64_t>(tag))); }

  Stream stream(StreamTag tag, std::uint64_t a) const {
    return Stream(mix_key(mix_key(base_, static_cast<std::uint64_t>(tag)), a));
  }

  Stream stream(StreamTag tag, std::uint64_t a, std::uint64_t b) const {
    return Stream(mix_key(mix_key(mix_key(base_, static_cast<std::uint64_t>(tag)), a), b));
  }

 private:
  std::uint64_t base_;
};

}  // namespace fdcran
