// Copyright (C) 2026 The fdcran authors
// SPDX-License-Identifier: Apache-2.0

#include "config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>

#include "json.hpp"

namespace fdcran {

namespace {

using nlohmann::json;

std::string describe(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

void require(bool ok, const char* field, const std::string& what) {
  if (!ok) throw ConfigError(field, what);
}

double read_real(const json& v, const char* field) {
  if (!v.is_number()) throw ConfigError(field, "expected a number");
  return v.get<double>();
}

std::uint64_t read_unsigned(const json& v, const char* field) {
  if (v.is_number_unsigned()) return v.get<std::uint64_t>();
  if (v.is_number_integer()) {
    if (v.get<std::int64_t>() < 0) throw ConfigError(field, "expected a non-negative integer");
    return static_cast<std::uint64_t>(v.get<std::int64_t>());
  }
  throw ConfigError(field, "expected a non-negative integer");
}

}  // namespace

std::string_view to_string(Scheme s) { return s == Scheme::kAra ? "ARA" : "SRA"; }

std::string_view to_string(Design d) {
  switch (d) {
    case Design::kMrcMrt: return "MRC_MRT";
    case Design::kZfMrt: return "ZF_MRT";
    case Design::kOptimal: return "OPTIMAL";
  }
  return "?";
}

std::string_view to_string(Duplex d) { return d == Duplex::kFull ? "FD" : "HD"; }

std::string_view to_string(Direction d) {
  switch (d) {
    case Direction::kUplink: return "UL";
    case Direction::kDownlink: return "DL";
    case Direction::kSum: return "SUM";
  }
  return "?";
}

Scheme parse_scheme(std::string_view s) {
  if (s == "ARA" || s == "ara") return Scheme::kAra;
  if (s == "SRA" || s == "sra") return Scheme::kSra;
  throw std::invalid_argument("unknown scheme '" + std::string(s) + "'");
}

Design parse_design(std::string_view s) {
  if (s == "MRC_MRT" || s == "mrc_mrt" || s == "mrc") return Design::kMrcMrt;
  if (s == "ZF_MRT" || s == "zf_mrt" || s == "zf") return Design::kZfMrt;
  if (s == "OPTIMAL" || s == "optimal") return Design::kOptimal;
  throw std::invalid_argument("unknown design '" + std::string(s) + "'");
}

Duplex parse_duplex(std::string_view s) {
  if (s == "FD" || s == "fd") return Duplex::kFull;
  if (s == "HD" || s == "hd") return Duplex::kHalf;
  throw std::invalid_argument("unknown duplex mode '" + std::string(s) + "'");
}

void validate(const SystemConfig& c) {
  require(std::isfinite(c.lambda) && c.lambda >= 0.0, "lambda",
          "must be finite and >= 0 (got " + describe(c.lambda) + ")");
  require(std::isfinite(c.R) && c.R > 0.0, "R", "must be finite and > 0 (got " + describe(c.R) + ")");
  require(std::isfinite(c.mu) && c.mu > 2.0, "mu",
          "path-loss exponent must exceed 2 (got " + describe(c.mu) + ")");
  require(c.p_d >= 0.0 && c.p_d <= 1.0, "p_d", "must lie in [0, 1] (got " + describe(c.p_d) + ")");
  require(c.phi >= 0.0 && c.phi <= std::numbers::pi, "phi",
          "must lie in [0, pi] (got " + describe(c.phi) + ")");
  require(c.M >= 1 && c.M <= kMaxAntennas, "M",
          "antenna count must lie in [1, " + std::to_string(kMaxAntennas) + "] (got " +
              std::to_string(c.M) + ")");
  require(std::isfinite(c.P_b_dbm), "P_b_dbm", "must be finite");
  require(std::isfinite(c.P_u_dbm), "P_u_dbm", "must be finite");
  require(std::isfinite(c.sigma_li_dbm), "sigma_li_dbm", "must be finite");
  require(std::isfinite(c.noise_dbm), "noise_dbm", "must be finite");
  require(c.tau >= 0.0 && c.tau <= 1.0, "tau", "must lie in [0, 1] (got " + describe(c.tau) + ")");
  require(c.trials >= 1, "trials", "must be >= 1");
}

double dbm_to_linear(double dbm, double noise_dbm) {
  return std::pow(10.0, (dbm - noise_dbm) / 10.0);
}

double linear_to_dbm(double linear, double noise_dbm) {
  return 10.0 * std::log10(linear) + noise_dbm;
}

NormalizedConfig normalize(const SystemConfig& c) {
  validate(c);
  NormalizedConfig n;
  n.P_b = dbm_to_linear(c.P_b_dbm, c.noise_dbm);
  n.P_u = dbm_to_linear(c.P_u_dbm, c.noise_dbm);
  n.sigma_li = dbm_to_linear(c.sigma_li_dbm, c.noise_dbm);
  return n;
}

double delta(const SystemConfig& c) {
  if (!(c.mu > 2.0)) throw ConfigError("mu", "path-loss exponent must exceed 2 (got " + describe(c.mu) + ")");
  return 2.0 / c.mu;
}

Rational rationalize(double x, long max_denominator) {
  Rational best{std::lround(x), 1};
  double best_err = std::abs(x - static_cast<double>(best.m));
  for (long n = 2; n <= max_denominator; ++n) {
    const long m = std::lround(x * static_cast<double>(n));
    const double err = std::abs(x - static_cast<double>(m) / static_cast<double>(n));
    if (err < best_err - 1e-15) {
      best = {m, n};
      best_err = err;
    }
  }
  const long g = std::gcd(best.m, best.n);
  if (g > 1) best = {best.m / g, best.n / g};
  return best;
}

SystemConfig config_from_json_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError("<file>", std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("<file>", "top level must be a JSON object");

  SystemConfig c;
  for (const auto& [key, value] : doc.items()) {
    const char* k = key.c_str();
    if (key == "lambda") c.lambda = read_real(value, k);
    else if (key == "R") c.R = read_real(value, k);
    else if (key == "mu") c.mu = read_real(value, k);
    else if (key == "p_d") c.p_d = read_real(value, k);
    else if (key == "phi") c.phi = read_real(value, k);
    else if (key == "M") {
      if (!value.is_number_integer()) throw ConfigError("M", "expected an integer");
      c.M = value.get<int>();
    } else if (key == "P_b_dbm") c.P_b_dbm = read_real(value, k);
    else if (key == "P_u_dbm") c.P_u_dbm = read_real(value, k);
    else if (key == "sigma_li_dbm") c.sigma_li_dbm = read_real(value, k);
    else if (key == "noise_dbm") c.noise_dbm = read_real(value, k);
    else if (key == "tau") c.tau = read_real(value, k);
    else if (key == "trials") c.trials = read_unsigned(value, k);
    else if (key == "seed") c.seed = read_unsigned(value, k);
    else throw ConfigError(key, "unknown configuration key");
  }
  validate(c);
  return c;
}

SystemConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("<file>", "cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return config_from_json_text(ss.str());
}

std::string canonical_json(const SystemConfig& c) {
  json doc = {
      {"lambda", c.lambda},       {"R", c.R},
      {"mu", c.mu},               {"p_d", c.p_d},
      {"phi", c.phi},             {"M", c.M},
      {"P_b_dbm", c.P_b_dbm},     {"P_u_dbm", c.P_u_dbm},
      {"sigma_li_dbm", c.sigma_li_dbm}, {"noise_dbm", c.noise_dbm},
      {"tau", c.tau},             {"trials", c.trials},
      {"seed", c.seed},
  };
  return doc.dump();
}

std::string config_hash(const SystemConfig& c) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : canonical_json(c)) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace fdcran
