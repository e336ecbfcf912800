// Copyright (C) 2026 The fdcran authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>

#include "experiments.hpp"
#include "validation.hpp"

namespace fdcran {

/// scheme,design,duplex,<x>,rate_ul,rate_dl,rate_sum,std_error,trials. std_error is
/// that of rate_sum. With bits, rates and errors are divided by ln 2.
std::string to_csv(const RateTable& table, bool bits = false);

/// formula_id,analytic_value,mc_value,mc_std_error,abs_gap,verdict. Values are
/// reported as computed; `bits` is accepted for symmetry and ignored.
std::string to_csv(const ValidationReport& report, bool bits = false);

/// %.9g
std::string format_number(double v);

}  // namespace fdcran
