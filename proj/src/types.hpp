// Copyright (C) 2026 The fdcran authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <string_view>

#include <Eigen/Core>

namespace fdcran {

using cd = std::complex<double>;

// Antenna arrays are small; fixed capacity keeps channel vectors off the heap.
inline constexpr int kMaxAntennas = 8;

using CVec = Eigen::Matrix<cd, Eigen::Dynamic, 1, Eigen::ColMajor, kMaxAntennas, 1>;
using CMat = Eigen::Matrix<cd, Eigen::Dynamic, Eigen::Dynamic, Eigen::ColMajor,
                           kMaxAntennas, kMaxAntennas>;
using Vec2 = Eigen::Vector2d;

enum class Scheme { kAra, kSra };
enum class Design { kMrcMrt, kZfMrt, kOptimal };
enum class Duplex { kFull, kHalf };
enum class Direction { kUplink, kDownlink, kSum };

std::string_view to_string(Scheme s);
std::string_view to_string(Design d);
std::string_view to_string(Duplex d);
std::string_view to_string(Direction d);

Scheme parse_scheme(std::string_view s);
Design parse_design(std::string_view s);
Duplex parse_duplex(std::string_view s);

/// Invalid configuration; `field()` names the offending SystemConfig field.
class ConfigError : public std::invalid_argument {
 public:
  ConfigError(std::string field, const std::string& what)
      : std::invalid_argument(field + ": " + what), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

/// A requested design/scheme combination the model does not define.
class UnsupportedError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A beamformer constraint that cannot be met (ZF with one antenna, alpha out of range).
class InfeasibleError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Zero channel or zero projection; probability zero under Rayleigh fading.
class DegenerateChannelError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace fdcran
