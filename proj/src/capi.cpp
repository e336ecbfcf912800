// Copyright (C) 2026 The fdcran authors
// SPDX-License-Identifier: Apache-2.0

#include "fdcran/fdcran.h"

#include <cstring>
#include <fstream>
#include <new>
#include <sstream>
#include <string>
#include <variant>

#include "config.hpp"
#include "experiments.hpp"
#include "geometry.hpp"
#include "rng.hpp"
#include "table.hpp"
#include "validation.hpp"

struct fdcran_config {
  fdcran::SystemConfig value;
};

struct fdcran_table {
  std::variant<fdcran::RateTable, fdcran::ValidationReport> value;
};

namespace {

thread_local std::string g_error;
thread_local std::string g_error_field;

fdcran_status fail(fdcran_status status, const std::string& message, const std::string& field = "") {
  g_error = message;
  g_error_field = field;
  return status;
}

template <class F>
fdcran_status guarded(F&& body) {
  g_error.clear();
  g_error_field.clear();
  try {
    return body();
  } catch (const fdcran::ConfigError& e) {
    return fail(FDCRAN_CONFIG_ERROR, e.what(), e.field());
  } catch (const fdcran::UnsupportedError& e) {
    return fail(FDCRAN_UNSUPPORTED, e.what());
  } catch (const fdcran::InfeasibleError& e) {
    return fail(FDCRAN_INFEASIBLE, e.what());
  } catch (const fdcran::DegenerateChannelError& e) {
    return fail(FDCRAN_DEGENERATE, e.what());
  } catch (const std::bad_alloc&) {
    return fail(FDCRAN_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(FDCRAN_INTERNAL, e.what());
  }
}

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

fdcran::Scheme to_scheme(fdcran_scheme s) { return s == FDCRAN_ARA ? fdcran::Scheme::kAra : fdcran::Scheme::kSra; }

fdcran_scheme from_scheme(fdcran::Scheme s) { return s == fdcran::Scheme::kAra ? FDCRAN_ARA : FDCRAN_SRA; }

fdcran::Design to_design(fdcran_design d) {
  switch (d) {
    case FDCRAN_ZF_MRT: return fdcran::Design::kZfMrt;
    case FDCRAN_OPTIMAL: return fdcran::Design::kOptimal;
    default: return fdcran::Design::kMrcMrt;
  }
}

fdcran_design from_design(fdcran::Design d) {
  switch (d) {
    case fdcran::Design::kZfMrt: return FDCRAN_ZF_MRT;
    case fdcran::Design::kOptimal: return FDCRAN_OPTIMAL;
    default: return FDCRAN_MRC_MRT;
  }
}

fdcran_rate from_estimate(const fdcran::RateEstimate& e) { return {e.mean, e.std_error, e.trials}; }

bool valid_enum(int v, int hi) { return v >= 0 && v <= hi; }

}  // namespace

extern "C" {

const char* fdcran_version(void) { return "0.1.0"; }
const char* fdcran_last_error(void) { return g_error.c_str(); }
const char* fdcran_last_error_field(void) { return g_error_field.c_str(); }
void fdcran_string_free(char* s) { delete[] s; }
unsigned fdcran_default_threads(void) { return fdcran::worker_count(); }

fdcran_status fdcran_config_default(fdcran_config** out) {
  if (!out) return fail(FDCRAN_INVALID_ARGUMENT, "null output pointer");
  return guarded([&] {
    *out = new fdcran_config{};
    return FDCRAN_OK;
  });
}

fdcran_status fdcran_config_from_file(const char* path, fdcran_config** out) {
  if (!path || !out) return fail(FDCRAN_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    std::ifstream in(path);
    if (!in) return fail(FDCRAN_IO_ERROR, std::string("cannot open '") + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    *out = new fdcran_config{fdcran::config_from_json_text(ss.str())};
    return FDCRAN_OK;
  });
}

fdcran_status fdcran_config_from_json(const char* json, fdcran_config** out) {
  if (!json || !out) return fail(FDCRAN_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    *out = new fdcran_config{fdcran::config_from_json_text(json)};
    return FDCRAN_OK;
  });
}

void fdcran_config_free(fdcran_config* config) { delete config; }

fdcran_status fdcran_config_set_trials(fdcran_config* config, uint64_t trials) {
  if (!config) return fail(FDCRAN_INVALID_ARGUMENT, "null config");
  if (trials < 1) return fail(FDCRAN_CONFIG_ERROR, "trials: must be >= 1", "trials");
  config->value.trials = trials;
  return FDCRAN_OK;
}

fdcran_status fdcran_config_set_seed(fdcran_config* config, uint64_t seed) {
  if (!config) return fail(FDCRAN_INVALID_ARGUMENT, "null config");
  config->value.seed = seed;
  return FDCRAN_OK;
}

uint64_t fdcran_config_trials(const fdcran_config* config) { return config ? config->value.trials : 0; }
uint64_t fdcran_config_seed(const fdcran_config* config) { return config ? config->value.seed : 0; }

fdcran_status fdcran_config_hash(const fdcran_config* config, char* buf, size_t len) {
  if (!config || !buf || len < 17) return fail(FDCRAN_INVALID_ARGUMENT, "need a config and a 17-byte buffer");
  return guarded([&] {
    const std::string h = fdcran::config_hash(config->value);
    std::memcpy(buf, h.c_str(), h.size() + 1);
    return FDCRAN_OK;
  });
}

fdcran_status fdcran_config_to_json(const fdcran_config* config, char** out) {
  if (!config || !out) return fail(FDCRAN_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    *out = dup_string(fdcran::canonical_json(config->value));
    return FDCRAN_OK;
  });
}

fdcran_status fdcran_run_single(const fdcran_config* config, fdcran_scheme scheme, fdcran_design design,
                                fdcran_duplex duplex, fdcran_table** out) {
  if (!config || !out) return fail(FDCRAN_INVALID_ARGUMENT, "null argument");
  if (!valid_enum(scheme, 1) || !valid_enum(design, 2) || !valid_enum(duplex, 1)) {
    return fail(FDCRAN_INVALID_ARGUMENT, "enum value out of range");
  }
  return guarded([&] {
    const fdcran::DesignKey key{to_scheme(scheme), to_design(design),
                                duplex == FDCRAN_HD ? fdcran::Duplex::kHalf : fdcran::Duplex::kFull};
    if (key.duplex == fdcran::Duplex::kHalf && key.design != fdcran::Design::kMrcMrt) {
      return fail(FDCRAN_UNSUPPORTED, "half-duplex runs use MRC/MRT only");
    }
    *out = new fdcran_table{fdcran::single_run(config->value, key, config->value.trials)};
    return FDCRAN_OK;
  });
}

fdcran_status fdcran_run_rate_region(const fdcran_config* config, int points, fdcran_table** out) {
  if (!config || !out) return fail(FDCRAN_INVALID_ARGUMENT, "null argument");
  if (points < 1) return fail(FDCRAN_INVALID_ARGUMENT, "points must be >= 1");
  return guarded([&] {
    fdcran::validate(config->value);
    *out = new fdcran_table{
        fdcran::rate_region(config->value, fdcran::linspace(0.0, 1.0, points), config->value.trials)};
    return FDCRAN_OK;
  });
}

fdcran_status fdcran_run_phi_sweep(const fdcran_config* config, double from, double to, int steps,
                                   fdcran_table** out) {
  if (!config || !out) return fail(FDCRAN_INVALID_ARGUMENT, "null argument");
  if (steps < 1) return fail(FDCRAN_INVALID_ARGUMENT, "steps must be >= 1");
  return guarded([&] {
    fdcran::validate(config->value);
    for (double phi : {from, to}) {
      fdcran::SystemConfig probe = config->value;
      probe.phi = phi;
      fdcran::validate(probe);
    }
    *out = new fdcran_table{
        fdcran::phi_sweep(config->value, fdcran::linspace(from, to, steps), config->value.trials)};
    return FDCRAN_OK;
  });
}

fdcran_status fdcran_run_validate(const fdcran_config* config, double tolerance_scale, int* all_passed,
                                  fdcran_table** out) {
  if (!config || !out) return fail(FDCRAN_INVALID_ARGUMENT, "null argument");
  if (!(tolerance_scale >= 0.0)) return fail(FDCRAN_INVALID_ARGUMENT, "tolerance scale must be >= 0");
  return guarded([&] {
    fdcran::ValidationReport report = fdcran::run_validation(config->value, tolerance_scale);
    const bool ok = report.all_passed;
    if (all_passed) *all_passed = ok ? 1 : 0;
    *out = new fdcran_table{std::move(report)};
    return ok ? FDCRAN_OK : fail(FDCRAN_VALIDATION_FAILED, "one or more validation rows failed");
  });
}

fdcran_table_kind fdcran_table_kind_of(const fdcran_table* table) {
  return table && table->value.index() == 1 ? FDCRAN_TABLE_VALIDATION : FDCRAN_TABLE_RATES;
}

size_t fdcran_table_rows(const fdcran_table* table) {
  if (!table) return 0;
  return std::visit([](const auto& t) { return t.rows.size(); }, table->value);
}

fdcran_status fdcran_table_rate_row(const fdcran_table* table, size_t i, fdcran_rate_row* out) {
  if (!table || !out) return fail(FDCRAN_INVALID_ARGUMENT, "null argument");
  const auto* rates = std::get_if<fdcran::RateTable>(&table->value);
  if (!rates) return fail(FDCRAN_INVALID_ARGUMENT, "not a rate table");
  if (i >= rates->rows.size()) return fail(FDCRAN_INVALID_ARGUMENT, "row index out of range");
  const fdcran::RateRow& r = rates->rows[i];
  out->scheme = from_scheme(r.key.scheme);
  out->design = from_design(r.key.design);
  out->duplex = r.key.duplex == fdcran::Duplex::kHalf ? FDCRAN_HD : FDCRAN_FD;
  out->x = r.x;
  out->ul = from_estimate(r.rates.ul);
  out->dl = from_estimate(r.rates.dl);
  out->sum = from_estimate(r.rates.sum);
  return FDCRAN_OK;
}

fdcran_status fdcran_table_validation_row(const fdcran_table* table, size_t i, fdcran_validation_row* out) {
  if (!table || !out) return fail(FDCRAN_INVALID_ARGUMENT, "null argument");
  const auto* report = std::get_if<fdcran::ValidationReport>(&table->value);
  if (!report) return fail(FDCRAN_INVALID_ARGUMENT, "not a validation table");
  if (i >= report->rows.size()) return fail(FDCRAN_INVALID_ARGUMENT, "row index out of range");
  const fdcran::ValidationRow& r = report->rows[i];
  *out = {r.formula_id.c_str(), r.analytic_value, r.mc_value, r.mc_std_error, r.abs_gap, r.tolerance,
          r.verdict.c_str()};
  return FDCRAN_OK;
}

fdcran_status fdcran_table_to_csv(const fdcran_table* table, int bits, char** out) {
  if (!table || !out) return fail(FDCRAN_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    *out = dup_string(std::visit([&](const auto& t) { return fdcran::to_csv(t, bits != 0); }, table->value));
    return FDCRAN_OK;
  });
}

fdcran_status fdcran_table_write_csv(const fdcran_table* table, const char* path, int bits) {
  if (!table || !path) return fail(FDCRAN_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    const std::string csv = std::visit([&](const auto& t) { return fdcran::to_csv(t, bits != 0); }, table->value);
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) return fail(FDCRAN_IO_ERROR, std::string("cannot write '") + path + "'");
    f << csv;
    f.close();
    if (!f) return fail(FDCRAN_IO_ERROR, std::string("error writing '") + path + "'");
    return FDCRAN_OK;
  });
}

void fdcran_table_free(fdcran_table* table) { delete table; }

fdcran_status fdcran_realization_csv(const fdcran_config* config, uint64_t trial, char** out) {
  if (!config || !out) return fail(FDCRAN_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    fdcran::validate(config->value);
    fdcran::Stream geometry = fdcran::TrialStreams(config->value.seed, trial).stream(fdcran::StreamTag::kGeometry);
    std::ostringstream ss;
    fdcran::write_realization_csv(ss, fdcran::sample_realization(config->value, geometry));
    *out = dup_string(ss.str());
    return FDCRAN_OK;
  });
}

}  // extern "C"
