/* Copyright (C) 2026 The fdcran authors
 * SPDX-License-Identifier: Apache-2.0
 *
 * C interface to the fdcran rate engine. Handles are opaque and owned by the
 * caller; every function that can fail returns an fdcran_status and leaves a
 * message in fdcran_last_error() (per thread).
 */
#ifndef FDCRAN_FDCRAN_H
#define FDCRAN_FDCRAN_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(FDCRAN_BUILDING_LIBRARY)
#define FDCRAN_API __attribute__((visibility("default")))
#else
#define FDCRAN_API
#endif

typedef struct fdcran_config fdcran_config;
typedef struct fdcran_table fdcran_table;

typedef enum fdcran_status {
  FDCRAN_OK = 0,
  FDCRAN_VALIDATION_FAILED = 1, /* run_validate: at least one row failed; table still produced */
  FDCRAN_CONFIG_ERROR = 2,      /* see fdcran_last_error_field() */
  FDCRAN_UNSUPPORTED = 3,       /* e.g. OPTIMAL with ARA */
  FDCRAN_INFEASIBLE = 4,        /* e.g. ZF with a single antenna */
  FDCRAN_DEGENERATE = 5,
  FDCRAN_IO_ERROR = 6,
  FDCRAN_INVALID_ARGUMENT = 7,
  FDCRAN_INTERNAL = 8
} fdcran_status;

typedef enum fdcran_scheme { FDCRAN_SRA = 0, FDCRAN_ARA = 1 } fdcran_scheme;
typedef enum fdcran_design { FDCRAN_MRC_MRT = 0, FDCRAN_ZF_MRT = 1, FDCRAN_OPTIMAL = 2 } fdcran_design;
typedef enum fdcran_duplex { FDCRAN_FD = 0, FDCRAN_HD = 1 } fdcran_duplex;
typedef enum fdcran_table_kind { FDCRAN_TABLE_RATES = 0, FDCRAN_TABLE_VALIDATION = 1 } fdcran_table_kind;

typedef struct fdcran_rate {
  double mean;      /* nats */
  double std_error; /* nats */
  uint64_t trials;
} fdcran_rate;

typedef struct fdcran_rate_row {
  fdcran_scheme scheme;
  fdcran_design design;
  fdcran_duplex duplex;
  double x; /* p_d or phi */
  fdcran_rate ul;
  fdcran_rate dl;
  fdcran_rate sum;
} fdcran_rate_row;

/* Strings point into the table and live as long as it does. */
typedef struct fdcran_validation_row {
  const char* formula_id;
  double analytic_value;
  double mc_value;
  double mc_std_error;
  double abs_gap;
  double tolerance;
  const char* verdict;
} fdcran_validation_row;

FDCRAN_API const char* fdcran_version(void);
FDCRAN_API const char* fdcran_last_error(void);
/* Offending field of the last FDCRAN_CONFIG_ERROR, or "". */
FDCRAN_API const char* fdcran_last_error_field(void);
FDCRAN_API void fdcran_string_free(char* s);
/* Worker threads a run would use (honours FDCRAN_THREADS). */
FDCRAN_API unsigned fdcran_default_threads(void);

FDCRAN_API fdcran_status fdcran_config_default(fdcran_config** out);
FDCRAN_API fdcran_status fdcran_config_from_file(const char* path, fdcran_config** out);
FDCRAN_API fdcran_status fdcran_config_from_json(const char* json, fdcran_config** out);
FDCRAN_API void fdcran_config_free(fdcran_config* config);
FDCRAN_API fdcran_status fdcran_config_set_trials(fdcran_config* config, uint64_t trials);
FDCRAN_API fdcran_status fdcran_config_set_seed(fdcran_config* config, uint64_t seed);
FDCRAN_API uint64_t fdcran_config_trials(const fdcran_config* config);
FDCRAN_API uint64_t fdcran_config_seed(const fdcran_config* config);
/* Writes 16 hex digits and a NUL; buf must hold 17 bytes. */
FDCRAN_API fdcran_status fdcran_config_hash(const fdcran_config* config, char* buf, size_t len);
FDCRAN_API fdcran_status fdcran_config_to_json(const fdcran_config* config, char** out);

FDCRAN_API fdcran_status fdcran_run_single(const fdcran_config* config, fdcran_scheme scheme, fdcran_design design,
                                           fdcran_duplex duplex, fdcran_table** out);
/* p_d on `points` evenly spaced values in [0, 1], every scheme/design/duplex combination. */
FDCRAN_API fdcran_status fdcran_run_rate_region(const fdcran_config* config, int points, fdcran_table** out);
/* SRA full-duplex designs for phi on `steps` evenly spaced values in [from, to]. */
FDCRAN_API fdcran_status fdcran_run_phi_sweep(const fdcran_config* config, double from, double to, int steps,
                                              fdcran_table** out);
/* all_passed may be NULL. Returns FDCRAN_VALIDATION_FAILED (with *out set) if any row failed. */
FDCRAN_API fdcran_status fdcran_run_validate(const fdcran_config* config, double tolerance_scale, int* all_passed,
                                             fdcran_table** out);

FDCRAN_API fdcran_table_kind fdcran_table_kind_of(const fdcran_table* table);
FDCRAN_API size_t fdcran_table_rows(const fdcran_table* table);
FDCRAN_API fdcran_status fdcran_table_rate_row(const fdcran_table* table, size_t i, fdcran_rate_row* out);
FDCRAN_API fdcran_status fdcran_table_validation_row(const fdcran_table* table, size_t i,
                                                     fdcran_validation_row* out);
/* bits != 0 reports rates in bits instead of nats (rate tables only). */
FDCRAN_API fdcran_status fdcran_table_to_csv(const fdcran_table* table, int bits, char** out);
FDCRAN_API fdcran_status fdcran_table_write_csv(const fdcran_table* table, const char* path, int bits);
FDCRAN_API void fdcran_table_free(fdcran_table* table);

/* CSV (x,y,role) of the RRH layout drawn for `trial`. */
FDCRAN_API fdcran_status fdcran_realization_csv(const fdcran_config* config, uint64_t trial, char** out);

#ifdef __cplusplus
}
#endif

#endif /* FDCRAN_FDCRAN_H */
