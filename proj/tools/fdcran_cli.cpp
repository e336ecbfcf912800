// Copyright (C) 2026 The fdcran authors
// SPDX-License-Identifier: Apache-2.0

// fdcran: command-line front end over the C API.

#include <chrono>
#include <cstdio>
#include <cstring>
#include <ctime>
#include <fstream>
#include <iostream>
#include <memory>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fdcran/fdcran.h"
#include "json.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitConfig = 2;
constexpr int kExitUnsupported = 3;
constexpr int kExitRuntime = 4;

struct ConfigDeleter {
  void operator()(fdcran_config* c) const { fdcran_config_free(c); }
};
struct TableDeleter {
  void operator()(fdcran_table* t) const { fdcran_table_free(t); }
};
using ConfigPtr = std::unique_ptr<fdcran_config, ConfigDeleter>;
using TablePtr = std::unique_ptr<fdcran_table, TableDeleter>;

int exit_code(fdcran_status s) {
  switch (s) {
    case FDCRAN_OK: return kExitOk;
    case FDCRAN_VALIDATION_FAILED: return kExitValidation;
    case FDCRAN_CONFIG_ERROR:
    case FDCRAN_INVALID_ARGUMENT: return kExitConfig;
    case FDCRAN_UNSUPPORTED:
    case FDCRAN_INFEASIBLE: return kExitUnsupported;
    default: return kExitRuntime;
  }
}

int report(fdcran_status s) {
  std::string field = fdcran_last_error_field();
  std::cerr << "fdcran: " << fdcran_last_error();
  if (s == FDCRAN_CONFIG_ERROR && !field.empty()) std::cerr << " [field " << field << "]";
  std::cerr << '\n';
  return exit_code(s);
}

std::string utc_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

struct Options {
  std::string config_path;
  std::string out;
  std::optional<std::uint64_t> trials;
  std::optional<std::uint64_t> seed;
  bool bits = false;
  std::string dump_realization;

  std::string scheme = "SRA";
  std::string design = "ZF_MRT";
  std::string duplex = "FD";
  int points = 21;
  double from = 0.0;
  double to = std::numbers::pi;
  int steps = 16;
  double tolerance_scale = 1.0;
};

int parse_enum(const std::string& v, const std::vector<std::pair<std::string, int>>& names) {
  for (const auto& [name, value] : names) {
    std::string lower = name;
    for (char& ch : lower) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    if (v == name || v == lower) return value;
  }
  return -1;
}

int run(const std::string& command, const Options& opt) {
  const std::string started = utc_now();
  fdcran_config* raw = nullptr;
  fdcran_status s = opt.config_path.empty() ? fdcran_config_default(&raw)
                                            : fdcran_config_from_file(opt.config_path.c_str(), &raw);
  if (s != FDCRAN_OK) return report(s);
  ConfigPtr config(raw);
  if (opt.trials && (s = fdcran_config_set_trials(config.get(), *opt.trials)) != FDCRAN_OK) return report(s);
  if (opt.seed) fdcran_config_set_seed(config.get(), *opt.seed);

  std::vector<std::string> outputs;
  if (!opt.dump_realization.empty()) {
    char* csv = nullptr;
    if ((s = fdcran_realization_csv(config.get(), 0, &csv)) != FDCRAN_OK) return report(s);
    std::ofstream f(opt.dump_realization, std::ios::binary | std::ios::trunc);
    f << csv;
    fdcran_string_free(csv);
    if (!f) {
      std::cerr << "fdcran: cannot write '" << opt.dump_realization << "'\n";
      return kExitRuntime;
    }
    outputs.push_back(opt.dump_realization);
  }

  fdcran_table* table_raw = nullptr;
  int all_passed = 1;
  if (command == "single") {
    const int scheme = parse_enum(opt.scheme, {{"SRA", FDCRAN_SRA}, {"ARA", FDCRAN_ARA}});
    const int design =
        parse_enum(opt.design, {{"MRC_MRT", FDCRAN_MRC_MRT}, {"ZF_MRT", FDCRAN_ZF_MRT}, {"OPTIMAL", FDCRAN_OPTIMAL},
                                {"MRC", FDCRAN_MRC_MRT}, {"ZF", FDCRAN_ZF_MRT}, {"OPT", FDCRAN_OPTIMAL}});
    const int duplex = parse_enum(opt.duplex, {{"FD", FDCRAN_FD}, {"HD", FDCRAN_HD}});
    if (scheme < 0 || design < 0 || duplex < 0) {
      std::cerr << "fdcran: unknown --scheme, --design or --duplex value\n";
      return kExitConfig;
    }
    s = fdcran_run_single(config.get(), static_cast<fdcran_scheme>(scheme), static_cast<fdcran_design>(design),
                          static_cast<fdcran_duplex>(duplex), &table_raw);
  } else if (command == "rate-region") {
    s = fdcran_run_rate_region(config.get(), opt.points, &table_raw);
  } else if (command == "phi-sweep") {
    s = fdcran_run_phi_sweep(config.get(), opt.from, opt.to, opt.steps, &table_raw);
  } else {
    s = fdcran_run_validate(config.get(), opt.tolerance_scale, &all_passed, &table_raw);
  }
  TablePtr table(table_raw);
  if (s != FDCRAN_OK && !(s == FDCRAN_VALIDATION_FAILED && table)) return report(s);

  char* csv = nullptr;
  if (fdcran_status cs = fdcran_table_to_csv(table.get(), opt.bits ? 1 : 0, &csv); cs != FDCRAN_OK) return report(cs);
  if (opt.out.empty()) {
    std::fwrite(csv, 1, std::strlen(csv), stdout);
  } else {
    std::ofstream f(opt.out, std::ios::binary | std::ios::trunc);
    f << csv;
    if (!f) {
      fdcran_string_free(csv);
      std::cerr << "fdcran: cannot write '" << opt.out << "'\n";
      return kExitRuntime;
    }
    outputs.push_back(opt.out);
  }
  fdcran_string_free(csv);

  if (command == "single" && fdcran_table_kind_of(table.get()) == FDCRAN_TABLE_RATES && !opt.out.empty()) {
    fdcran_rate_row row{};
    fdcran_table_rate_row(table.get(), 0, &row);
    const double unit = opt.bits ? 1.0 / std::numbers::ln2 : 1.0;
    const char* u = opt.bits ? "bits" : "nats";
    std::printf("UL %.6f %s  DL %.6f %s  SUM %.6f +- %.6f %s  (%llu trials)\n", row.ul.mean * unit, u,
                row.dl.mean * unit, u, row.sum.mean * unit, row.sum.std_error * unit, u,
                static_cast<unsigned long long>(row.sum.trials));
  }

  if (!opt.out.empty()) {
    char hash[17] = {};
    fdcran_config_hash(config.get(), hash, sizeof hash);
    nlohmann::json manifest = {
        {"command", command},
        {"config_hash", hash},
        {"seed", fdcran_config_seed(config.get())},
        {"trials", fdcran_config_trials(config.get())},
        {"threads", fdcran_default_threads()},
        {"started", started},
        {"finished", utc_now()},
        {"output_paths", outputs},
    };
    std::ofstream m(opt.out + ".manifest.json", std::ios::trunc);
    m << manifest.dump(2) << '\n';
  }
  if (s == FDCRAN_VALIDATION_FAILED || !all_passed) {
    std::cerr << "fdcran: validation failed\n";
    return kExitValidation;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Full-duplex C-RAN rate simulator"};
  app.require_subcommand(1, 1);
  Options opt;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", opt.config_path, "JSON configuration file")->check(CLI::ExistingFile);
    sub->add_option("--out", opt.out, "CSV output path (stdout if omitted)");
    sub->add_option("--trials", opt.trials, "override the trial count");
    sub->add_option("--seed", opt.seed, "override the seed");
    sub->add_flag("--bits", opt.bits, "report bits instead of nats");
    sub->add_option("--dump-realization", opt.dump_realization, "write the first trial's RRH layout as CSV");
  };

  CLI::App* single = app.add_subcommand("single", "one scheme/design estimate");
  add_common(single);
  single->add_option("--scheme", opt.scheme, "SRA or ARA")->capture_default_str();
  single->add_option("--design", opt.design, "MRC_MRT, ZF_MRT or OPTIMAL")->capture_default_str();
  single->add_option("--duplex", opt.duplex, "FD or HD")->capture_default_str();

  CLI::App* region = app.add_subcommand("rate-region", "sweep p_d over [0, 1] for every system");
  add_common(region);
  region->add_option("--points", opt.points, "grid points")->capture_default_str()->check(CLI::PositiveNumber);

  CLI::App* sweep = app.add_subcommand("phi-sweep", "sum rate of the SRA designs versus phi");
  add_common(sweep);
  sweep->add_option("--from", opt.from, "first phi (rad)")->capture_default_str();
  sweep->add_option("--to", opt.to, "last phi (rad)")->capture_default_str();
  sweep->add_option("--steps", opt.steps, "grid points")->capture_default_str()->check(CLI::PositiveNumber);

  CLI::App* valid = app.add_subcommand("validate", "analytic formulas against Monte Carlo");
  add_common(valid);
  valid->add_option("--tolerance-scale", opt.tolerance_scale, "multiplies every tolerance")
      ->capture_default_str()
      ->check(CLI::NonNegativeNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }
  const std::string command = app.get_subcommands().front()->get_name();
  return run(command, opt);
}
