// Copyright (C) 2026 The fdcran authors
// SPDX-License-Identifier: Apache-2.0

#include "montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>

#include "channel.hpp"
#include "geometry.hpp"
#include "rng.hpp"

namespace fdcran {

unsigned worker_count() {
  if (const char* env = std::getenv("FDCRAN_THREADS")) {
    try {
      const long v = std::stol(env);
      if (v > 0) return static_cast<unsigned>(std::min<long>(v, 1024));
    } catch (const std::exception&) {
      // unparsable: fall through to the hardware default
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_trials(std::uint64_t n, const std::function<void(std::uint64_t)>& body) {
  const unsigned workers = static_cast<unsigned>(std::min<std::uint64_t>(worker_count(), n));
  if (workers <= 1) {
    for (std::uint64_t t = 0; t < n; ++t) body(t);
    return;
  }
  constexpr std::uint64_t kBlock = 64;
  std::atomic<std::uint64_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto run = [&] {
    try {
      for (;;) {
        const std::uint64_t begin = next.fetch_add(kBlock);
        if (begin >= n) break;
        const std::uint64_t end = std::min(n, begin + kBlock);
        for (std::uint64_t t = begin; t < end; ++t) body(t);
      }
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
      next.store(n);
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers - 1);
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(run);
  run();
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

double pairwise_sum(std::span<const double> v) {
  if (v.size() <= 8) {
    double s = 0.0;
    for (double x : v) s += x;
    return s;
  }
  const std::size_t half = v.size() / 2;
  return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

RateEstimate summarize(std::span<const double> samples, Direction direction) {
  RateEstimate e;
  e.direction = direction;
  e.trials = samples.size();
  if (samples.empty()) return e;
  const double n = static_cast<double>(samples.size());
  e.mean = pairwise_sum(samples) / n;
  if (samples.size() > 1) {
    std::vector<double> sq(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) {
      const double d = samples[i] - e.mean;
      sq[i] = d * d;
    }
    e.std_error = std::sqrt(pairwise_sum(sq) / (n - 1.0) / n);
  }
  return e;
}

std::vector<Rates> simulate_trial(const Scenario& scenario, std::span<const DesignKey> keys, std::uint64_t trial) {
  const TrialStreams streams(scenario.config.seed, trial);
  Stream geometry = streams.stream(StreamTag::kGeometry);
  const NetworkRealization realization = sample_realization(scenario.config, geometry);
  const ChannelDraw channels(realization, scenario.config.M, scenario.power.li_gain(), streams);
  std::vector<Rates> out;
  out.reserve(keys.size());
  for (const DesignKey& key : keys) {
    if (key.duplex == Duplex::kHalf) {
      out.push_back(hd_rates(realization, channels, scenario, key.scheme));
    } else {
      out.push_back(instantaneous_rates(realization, channels, scenario, key.scheme, key.design));
    }
  }
  return out;
}

std::vector<RatePair> estimate_many(const SystemConfig& config, std::span<const DesignKey> keys,
                                    std::uint64_t trials) {
  const Scenario scenario(config);
  for (const DesignKey& key : keys) {
    if (key.duplex == Duplex::kFull && key.scheme == Scheme::kAra && key.design == Design::kOptimal) {
      throw UnsupportedError("OPTIMAL is defined for SRA only");
    }
    if (key.duplex == Duplex::kFull && key.design == Design::kZfMrt && config.M < 2) {
      throw InfeasibleError("zero-forcing receive needs at least two antennas");
    }
  }
  const std::size_t k = keys.size();
  // Layout: [key][trial] so each key's samples are contiguous for the reduction.
  std::vector<double> ul(k * trials), dl(k * trials);
  parallel_trials(trials, [&](std::uint64_t t) {
    const std::vector<Rates> rates = simulate_trial(scenario, keys, t);
    for (std::size_t i = 0; i < k; ++i) {
      ul[i * trials + t] = rates[i].ul;
      dl[i * trials + t] = rates[i].dl;
    }
  });

  std::vector<RatePair> out(k);
  std::vector<double> sum(trials);
  for (std::size_t i = 0; i < k; ++i) {
    const std::span<const double> u(ul.data() + i * trials, trials), d(dl.data() + i * trials, trials);
    for (std::uint64_t t = 0; t < trials; ++t) sum[t] = u[t] + d[t];
    out[i] = {summarize(u, Direction::kUplink), summarize(d, Direction::kDownlink),
              summarize(sum, Direction::kSum)};
  }
  return out;
}

RatePair estimate(const SystemConfig& config, Scheme scheme, Design design, std::uint64_t trials, Duplex duplex) {
  const DesignKey key{scheme, design, duplex};
  return estimate_many(config, std::span<const DesignKey>(&key, 1), trials).front();
}

}  // namespace fdcran
