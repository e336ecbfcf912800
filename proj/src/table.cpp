// Copyright (C) 2026 The fdcran authors
// SPDX-License-Identifier: Apache-2.0

#include "table.hpp"

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <numbers>

namespace fdcran {

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

std::string to_csv(const RateTable& table, bool bits) {
  const double unit = bits ? 1.0 / std::numbers::ln2 : 1.0;
  std::string out = "scheme,design,duplex," + table.x_name + ",rate_ul,rate_dl,rate_sum,std_error,trials\n";
  for (const RateRow& r : table.rows) {
    out += std::string(to_string(r.key.scheme)) + ',' + std::string(to_string(r.key.design)) + ',' +
           std::string(to_string(r.key.duplex)) + ',' + format_number(r.x) + ',' +
           format_number(r.rates.ul.mean * unit) + ',' + format_number(r.rates.dl.mean * unit) + ',' +
           format_number(r.rates.sum.mean * unit) + ',' + format_number(r.rates.sum.std_error * unit) + ',' +
           std::to_string(r.rates.sum.trials) + '\n';
  }
  return out;
}

std::string to_csv(const ValidationReport& report, bool /*bits*/) {
  std::string out = "formula_id,analytic_value,mc_value,mc_std_error,abs_gap,verdict\n";
  for (const ValidationRow& r : report.rows) {
    out += r.formula_id + ',' + format_number(r.analytic_value) + ',' + format_number(r.mc_value) + ',' +
           format_number(r.mc_std_error) + ',' + format_number(r.abs_gap) + ',' + r.verdict + '\n';
  }
  return out;
}

}  // namespace fdcran
