// Copyright (C) 2026 The fdcran authors
// SPDX-License-Identifier: Apache-2.0

#include <cstring>
#include <set>
#include <string>

#include "doctest.h"
#include "fdcran/fdcran.h"

namespace {

fdcran_config* small_config() {
  fdcran_config* c = nullptr;
  REQUIRE(fdcran_config_from_json(R"({"M": 2, "trials": 200, "seed": 5})", &c) == FDCRAN_OK);
  return c;
}

std::string csv_of(const fdcran_table* t, int bits = 0) {
  char* s = nullptr;
  REQUIRE(fdcran_table_to_csv(t, bits, &s) == FDCRAN_OK);
  std::string out(s);
  fdcran_string_free(s);
  return out;
}

std::size_t lines(const std::string& s) {
  std::size_t n = 0;
  for (char ch : s) n += ch == '\n';
  return n;
}

}  // namespace

TEST_CASE("config handles") {
  fdcran_config* c = nullptr;
  REQUIRE(fdcran_config_default(&c) == FDCRAN_OK);
  CHECK(fdcran_config_trials(c) > 0);
  CHECK(fdcran_config_set_trials(c, 123) == FDCRAN_OK);
  CHECK(fdcran_config_trials(c) == 123);
  CHECK(fdcran_config_set_seed(c, 9) == FDCRAN_OK);
  CHECK(fdcran_config_seed(c) == 9);
  CHECK(fdcran_config_set_trials(c, 0) == FDCRAN_CONFIG_ERROR);
  CHECK(std::string(fdcran_last_error_field()) == "trials");

  char hash[17];
  CHECK(fdcran_config_hash(c, hash, sizeof hash) == FDCRAN_OK);
  CHECK(std::strlen(hash) == 16);
  CHECK(fdcran_config_hash(c, hash, 8) == FDCRAN_INVALID_ARGUMENT);

  char* json = nullptr;
  REQUIRE(fdcran_config_to_json(c, &json) == FDCRAN_OK);
  fdcran_config* back = nullptr;
  REQUIRE(fdcran_config_from_json(json, &back) == FDCRAN_OK);
  char hash2[17];
  fdcran_config_hash(back, hash2, sizeof hash2);
  CHECK(std::string(hash) == std::string(hash2));
  fdcran_string_free(json);
  fdcran_config_free(back);
  fdcran_config_free(c);
  fdcran_config_free(nullptr);

  fdcran_config* bad = nullptr;
  CHECK(fdcran_config_from_json(R"({"p_d": 2})", &bad) == FDCRAN_CONFIG_ERROR);
  CHECK(bad == nullptr);
  CHECK(std::string(fdcran_last_error_field()) == "p_d");
  CHECK(std::strlen(fdcran_last_error()) > 0);
  CHECK(fdcran_config_from_file("/nonexistent/fdcran.json", &bad) != FDCRAN_OK);
  CHECK(fdcran_config_default(nullptr) == FDCRAN_INVALID_ARGUMENT);
  CHECK(std::string(fdcran_version()).size() > 0);
  CHECK(fdcran_default_threads() >= 1);
}

TEST_CASE("single runs") {
  fdcran_config* c = small_config();
  fdcran_table* t = nullptr;
  REQUIRE(fdcran_run_single(c, FDCRAN_SRA, FDCRAN_OPTIMAL, FDCRAN_FD, &t) == FDCRAN_OK);
  CHECK(fdcran_table_kind_of(t) == FDCRAN_TABLE_RATES);
  REQUIRE(fdcran_table_rows(t) == 1);
  fdcran_rate_row row{};
  REQUIRE(fdcran_table_rate_row(t, 0, &row) == FDCRAN_OK);
  CHECK(row.scheme == FDCRAN_SRA);
  CHECK(row.design == FDCRAN_OPTIMAL);
  CHECK(row.sum.trials == 200);
  CHECK(row.sum.mean == doctest::Approx(row.ul.mean + row.dl.mean).epsilon(1e-12));
  CHECK(fdcran_table_rate_row(t, 1, &row) == FDCRAN_INVALID_ARGUMENT);
  fdcran_validation_row vrow{};
  CHECK(fdcran_table_validation_row(t, 0, &vrow) == FDCRAN_INVALID_ARGUMENT);

  const std::string nats = csv_of(t), bits = csv_of(t, 1);
  CHECK(nats.rfind("scheme,design,duplex,p_d,rate_ul,rate_dl,rate_sum,std_error,trials\n", 0) == 0);
  CHECK(lines(nats) == 2);
  CHECK(nats != bits);

  // same inputs, same bytes
  fdcran_table* again = nullptr;
  REQUIRE(fdcran_run_single(c, FDCRAN_SRA, FDCRAN_OPTIMAL, FDCRAN_FD, &again) == FDCRAN_OK);
  CHECK(csv_of(again) == nats);
  fdcran_table_free(again);
  fdcran_table_free(t);

  t = nullptr;
  CHECK(fdcran_run_single(c, FDCRAN_ARA, FDCRAN_OPTIMAL, FDCRAN_FD, &t) == FDCRAN_UNSUPPORTED);
  CHECK(t == nullptr);
  CHECK(fdcran_run_single(c, FDCRAN_SRA, FDCRAN_ZF_MRT, FDCRAN_HD, &t) == FDCRAN_UNSUPPORTED);
  CHECK(fdcran_run_single(nullptr, FDCRAN_SRA, FDCRAN_ZF_MRT, FDCRAN_FD, &t) == FDCRAN_INVALID_ARGUMENT);

  fdcran_config* one = nullptr;
  REQUIRE(fdcran_config_from_json(R"({"M": 1, "trials": 50})", &one) == FDCRAN_OK);
  CHECK(fdcran_run_single(one, FDCRAN_SRA, FDCRAN_ZF_MRT, FDCRAN_FD, &t) == FDCRAN_INFEASIBLE);
  fdcran_config_free(one);
  fdcran_config_free(c);
}

TEST_CASE("sweeps") {
  fdcran_config* c = small_config();
  fdcran_table* t = nullptr;
  REQUIRE(fdcran_run_rate_region(c, 2, &t) == FDCRAN_OK);
  const std::size_t per_point = fdcran_table_rows(t) / 2;
  CHECK(fdcran_table_rows(t) == 2 * per_point);
  CHECK(per_point >= 3);
  std::set<double> xs;
  for (std::size_t i = 0; i < fdcran_table_rows(t); ++i) {
    fdcran_rate_row row{};
    fdcran_table_rate_row(t, i, &row);
    xs.insert(row.x);
  }
  CHECK(xs == std::set<double>{0.0, 1.0});
  CHECK(lines(csv_of(t)) == fdcran_table_rows(t) + 1);
  fdcran_table_free(t);

  REQUIRE(fdcran_run_phi_sweep(c, 0.0, 1.0, 3, &t) == FDCRAN_OK);
  CHECK(fdcran_table_rows(t) == 9);
  CHECK(csv_of(t).rfind("scheme,design,duplex,phi,", 0) == 0);
  fdcran_table_free(t);

  CHECK(fdcran_run_rate_region(c, 0, &t) != FDCRAN_OK);
  CHECK(fdcran_run_phi_sweep(c, 0.0, 4.0, 3, &t) == FDCRAN_CONFIG_ERROR);
  fdcran_config_free(c);
}

TEST_CASE("validation table") {
  fdcran_config* c = nullptr;
  REQUIRE(fdcran_config_from_json(R"({"M": 2, "trials": 300, "P_b_dbm": 10, "P_u_dbm": 10, "sigma_li_dbm": -30})",
                                  &c) == FDCRAN_OK);
  fdcran_table* t = nullptr;
  int passed = 1;
  // Zero tolerance cannot pass; the table is still produced.
  CHECK(fdcran_run_validate(c, 0.0, &passed, &t) == FDCRAN_VALIDATION_FAILED);
  REQUIRE(t != nullptr);
  CHECK(passed == 0);
  CHECK(fdcran_table_kind_of(t) == FDCRAN_TABLE_VALIDATION);
  std::set<std::string> ids;
  for (std::size_t i = 0; i < fdcran_table_rows(t); ++i) {
    fdcran_validation_row row{};
    REQUIRE(fdcran_table_validation_row(t, i, &row) == FDCRAN_OK);
    CHECK(ids.insert(row.formula_id).second);
    const std::string v = row.verdict;
    CHECK((v == "PASS" || v == "FAIL" || v == "INFO" || v == "SKIP"));
  }
  for (const char* id : {"P1_UL", "P1_DL", "P2_UL", "P3_DL"}) CHECK(ids.count(id) == 1);
  CHECK(csv_of(t).rfind("formula_id,analytic_value,mc_value,mc_std_error,abs_gap,verdict\n", 0) == 0);
  fdcran_table_free(t);
  fdcran_config_free(c);
}

TEST_CASE("realization dump") {
  fdcran_config* c = small_config();
  char* csv = nullptr;
  REQUIRE(fdcran_realization_csv(c, 0, &csv) == FDCRAN_OK);
  const std::string s(csv);
  fdcran_string_free(csv);
  CHECK(s.rfind("x,y,role\n", 0) == 0);
  CHECK(lines(s) >= 1);
  fdcran_config_free(c);
}
