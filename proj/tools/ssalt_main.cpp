// Command-line frontend for the ssalt shared library: fit, characteristics,
// simulate, and report subcommands. Exit codes: 0 ok, 1 I/O, 2 insufficient
// data, 3 infeasible contamination scheme, 4 numerical failure.

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "report.hpp"
#include "ssalt/ssalt.h"

namespace {

int exit_code(ssalt_status status) {
  switch (status) {
    case SSALT_OK:
      return 0;
    case SSALT_ERR_IO:
      return 1;
    case SSALT_ERR_INSUFFICIENT_DATA:
      return 2;
    case SSALT_ERR_INFEASIBLE_SCHEME:
      return 3;
    case SSALT_ERR_NUMERICAL:
      return 4;
    case SSALT_ERR_INVALID:
      return 1;
  }
  return 4;
}

int fail(ssalt_status status, const std::string& context) {
  std::cerr << "ssalt: " << context << ": " << ssalt_last_error() << "\n";
  return exit_code(status);
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(std::stod(item));
  }
  return out;
}

int env_workers() {
  const char* env = std::getenv("SSALT_WORKERS");
  if (!env || !*env) return 0;
  return std::atoi(env);
}

struct FitFlags {
  std::string config_path;
  std::string betas_csv;
  std::string out_dir = ".";
  double level = 0.0;  // 0 = take from config
  int restarts = 0;
};

int run_fit(const FitFlags& flags) {
  ssalt_config cfg;
  ssalt_status st = ssalt_config_load(flags.config_path.c_str(), &cfg);
  if (st != SSALT_OK) return fail(st, "loading config " + flags.config_path);
  if (!cfg.has_profile || !cfg.has_data) {
    std::cerr << "ssalt: config " << flags.config_path
              << " must define [profile] and [data] for fitting\n";
    return 1;
  }

  std::vector<double> betas(cfg.fit_betas, cfg.fit_betas + cfg.n_fit_betas);
  if (!flags.betas_csv.empty()) betas = parse_list(flags.betas_csv);
  const double level = flags.level > 0.0 ? flags.level : cfg.fit_level;

  ssalt_sample* sample = nullptr;
  size_t dropped = 0;
  st = ssalt_sample_read(&cfg.profile, cfg.data_path, cfg.n_units, &sample, &dropped);
  if (st != SSALT_OK) return fail(st, std::string("reading failure times from ") + cfg.data_path);
  if (dropped > 0)
    std::cerr << "ssalt: note: " << dropped
              << " recorded failure(s) at or past tau2 are treated as survivors\n";

  std::vector<ssalt_fit_row> rows;
  std::printf("%8s %12s %12s %12s %10s %26s %s\n", "beta", "a0", "a1", "eta", "objective",
              "a0 95%-CI", "converged");
  for (double beta : betas) {
    ssalt_fit_options options;
    ssalt_fit_options_init(&options);
    options.beta = beta;
    options.max_iters = cfg.fit_max_iters;
    options.tol = cfg.fit_tol;
    options.restarts = flags.restarts > 0 ? flags.restarts : cfg.fit_restarts;

    ssalt_fit fit;
    st = ssalt_fit_mdpde(&cfg.profile, sample, &options, &fit);
    if (st != SSALT_OK) {
      ssalt_sample_free(sample);
      return fail(st, "fitting beta = " + std::to_string(beta));
    }
    ssalt_cov cov;
    st = ssalt_sandwich_cov(&fit.theta, &cfg.profile, beta, &cov);
    if (st != SSALT_OK) {
      ssalt_sample_free(sample);
      return fail(st, "covariance at beta = " + std::to_string(beta));
    }
    double lo[3], hi[3];
    st = ssalt_param_ci(&fit, &cov, cfg.n_units, level, lo, hi);
    if (st != SSALT_OK) {
      ssalt_sample_free(sample);
      return fail(st, "confidence intervals");
    }
    rows.push_back(ssalt_fit_row{fit.beta, fit.theta.a0, lo[0], hi[0], fit.theta.a1, lo[1],
                                 hi[1], fit.theta.eta, lo[2], hi[2], fit.converged});
    std::printf("%8.3f %12.4f %12.5f %12.4f %10.4f   [%10.4f, %10.4f] %s\n", beta, fit.theta.a0,
                fit.theta.a1, fit.theta.eta, fit.objective, lo[0], hi[0],
                fit.converged ? "yes" : "no");
  }
  ssalt_sample_free(sample);

  std::filesystem::create_directories(flags.out_dir);
  const std::string table_path = flags.out_dir + "/fit_table.csv";
  st = ssalt_fit_table_write(table_path.c_str(), rows.data(), rows.size());
  if (st != SSALT_OK) return fail(st, "writing " + table_path);
  std::cerr << "ssalt: wrote " << table_path << "\n";
  return 0;
}

struct CharFlags {
  std::string config_path;
  std::string fit_table;
  std::vector<double> stresses;
  double mission_time = -1.0;
  double quantile_p = -1.0;
  double level = 0.0;
  std::string out_dir = ".";
};

int run_characteristics(const CharFlags& flags) {
  ssalt_config cfg;
  ssalt_status st = ssalt_config_load(flags.config_path.c_str(), &cfg);
  if (st != SSALT_OK) return fail(st, "loading config " + flags.config_path);
  if (!cfg.has_profile || cfg.n_units == 0) {
    std::cerr << "ssalt: config " << flags.config_path
              << " must define [profile] and [data] (for n)\n";
    return 1;
  }
  const double level = flags.level > 0.0 ? flags.level : cfg.fit_level;

  ssalt_fit_row rows[SSALT_MAX_GRID];
  size_t n_rows = 0;
  st = ssalt_fit_table_read(flags.fit_table.c_str(), rows, SSALT_MAX_GRID, &n_rows);
  if (st != SSALT_OK) return fail(st, "reading fit table " + flags.fit_table);

  std::filesystem::create_directories(flags.out_dir);
  const std::string out_path = flags.out_dir + "/characteristics.csv";
  std::ofstream out(out_path);
  if (!out) {
    std::cerr << "ssalt: cannot write " << out_path << "\n";
    return 1;
  }
  out << "beta,stress,kind,arg,value,variance,direct_lo,direct_hi,transformed_lo,transformed_hi\n";
  std::printf("%8s %9s %14s %8s %10s %26s %26s\n", "beta", "stress", "kind", "arg", "value",
              "direct CI", "transformed CI");

  for (size_t r = 0; r < n_rows; ++r) {
    ssalt_params theta{rows[r].a0, rows[r].a1, rows[r].eta};
    ssalt_cov cov;
    st = ssalt_sandwich_cov(&theta, &cfg.profile, rows[r].beta, &cov);
    if (st != SSALT_OK) return fail(st, "covariance at beta = " + std::to_string(rows[r].beta));
    for (double stress : flags.stresses) {
      struct Request {
        ssalt_char_kind kind;
        const char* name;
        double arg;
        bool enabled;
      } requests[] = {
          {SSALT_CHAR_MTTF, "mttf", 0.0, true},
          {SSALT_CHAR_RELIABILITY, "reliability", flags.mission_time, flags.mission_time > 0.0},
          {SSALT_CHAR_QUANTILE, "quantile", flags.quantile_p, flags.quantile_p > 0.0},
      };
      for (const Request& req : requests) {
        if (!req.enabled) continue;
        ssalt_char_estimate est;
        st = ssalt_characteristic(&theta, &cov, stress, req.kind, req.arg, cfg.n_units, level,
                                  &est);
        if (st != SSALT_OK) {
          // boundary reliabilities are reported per row, not fatal
          std::printf("%8.3f %9.4g %14s %8.4g %10s %26s %26s\n", rows[r].beta, stress, req.name,
                      req.arg, "-", ssalt_last_error(), "-");
          continue;
        }
        out << rows[r].beta << ',' << stress << ',' << req.name << ',' << req.arg << ','
            << est.value << ',' << est.variance << ',' << est.direct_lo << ',' << est.direct_hi
            << ',' << est.transformed_lo << ',' << est.transformed_hi << "\n";
        char direct[64], transformed[64];
        std::snprintf(direct, sizeof direct, "[%9.4f, %9.4f]", est.direct_lo, est.direct_hi);
        std::snprintf(transformed, sizeof transformed, "[%9.4f, %9.4f]", est.transformed_lo,
                      est.transformed_hi);
        std::printf("%8.3f %9.4g %14s %8.4g %10.4f %26s %26s\n", rows[r].beta, stress, req.name,
                    req.arg, est.value, direct, transformed);
      }
    }
  }
  std::cerr << "ssalt: wrote " << out_path << "\n";
  return 0;
}

struct SimulateFlags {
  std::string config_path;
  long replications = 0;
  long long seed = -1;
  int workers = -1;
  std::string contaminate;  // target:eps[,eps...]
  std::string out_dir = "study";
};

void print_progress(size_t done, size_t total, void*) {
  std::fprintf(stderr, "\rssalt: replications %zu/%zu", done, total);
  if (done == total) std::fputc('\n', stderr);
}

int run_simulate(const SimulateFlags& flags) {
  ssalt_config cfg;
  ssalt_status st = ssalt_config_load(flags.config_path.c_str(), &cfg);
  if (st != SSALT_OK) return fail(st, "loading config " + flags.config_path);
  if (!cfg.has_profile) {
    std::cerr << "ssalt: config " << flags.config_path << " must define [profile]\n";
    return 1;
  }
  ssalt_study_config study = cfg.simulate;
  if (flags.replications > 0) study.replications = static_cast<size_t>(flags.replications);
  if (flags.seed >= 0) study.seed = static_cast<uint64_t>(flags.seed);
  study.workers = flags.workers >= 0 ? flags.workers : env_workers();

  if (!flags.contaminate.empty()) {
    const auto colon = flags.contaminate.find(':');
    if (colon == std::string::npos) {
      std::cerr << "ssalt: --contaminate expects target:eps[,eps...]\n";
      return 1;
    }
    const std::string target = flags.contaminate.substr(0, colon);
    if (target == "a0")
      study.target = SSALT_TARGET_A0;
    else if (target == "a1")
      study.target = SSALT_TARGET_A1;
    else if (target == "eta")
      study.target = SSALT_TARGET_ETA;
    else {
      std::cerr << "ssalt: unknown contamination target '" << target << "'\n";
      return 1;
    }
    const std::vector<double> eps = parse_list(flags.contaminate.substr(colon + 1));
    if (eps.empty() || eps.size() > SSALT_MAX_GRID) {
      std::cerr << "ssalt: bad epsilon list in --contaminate\n";
      return 1;
    }
    for (size_t i = 0; i < eps.size(); ++i) study.epsilons[i] = eps[i];
    study.n_epsilons = eps.size();
  }

  std::filesystem::create_directories(flags.out_dir);
  st = ssalt_study_run(&study, flags.out_dir.c_str(), print_progress, nullptr);
  if (st != SSALT_OK) return fail(st, "running study");
  std::cerr << "ssalt: study written to " << flags.out_dir << "\n";
  return 0;
}

int run_report(const std::string& dir) {
  try {
    const int charts = report::generate(dir);
    std::cerr << "ssalt: wrote " << dir << "/summary.txt and " << charts << " chart(s)\n";
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "ssalt: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Robust step-stress accelerated-life-test estimation (Weibull, Type-I censoring)"};
  app.require_subcommand(1);

  FitFlags fit_flags;
  CLI::App* fit = app.add_subcommand("fit", "Fit MDPD estimates over a beta grid");
  fit->add_option("--config", fit_flags.config_path, "experiment config file")->required();
  fit->add_option("--betas", fit_flags.betas_csv, "comma-separated tuning parameters");
  fit->add_option("--level", fit_flags.level, "confidence level (default from config)");
  fit->add_option("--restarts", fit_flags.restarts, "optimizer multi-start count");
  fit->add_option("--out", fit_flags.out_dir, "output directory (fit_table.csv)");

  CharFlags char_flags;
  CLI::App* chars =
      app.add_subcommand("characteristics", "Lifetime characteristics from a fit table");
  chars->add_option("--config", char_flags.config_path, "experiment config file")->required();
  chars->add_option("--fit-table", char_flags.fit_table, "fit table CSV from 'fit'")->required();
  chars->add_option("--stress", char_flags.stresses, "stress level(s) to evaluate at")
      ->required()
      ->expected(-1);
  chars->add_option("--mission-time", char_flags.mission_time, "reliability mission time");
  chars->add_option("--quantile", char_flags.quantile_p, "failure probability for the quantile");
  chars->add_option("--level", char_flags.level, "confidence level (default from config)");
  chars->add_option("--out", char_flags.out_dir, "output directory (characteristics.csv)");

  SimulateFlags sim_flags;
  CLI::App* sim = app.add_subcommand("simulate", "Monte-Carlo contamination study");
  sim->add_option("--config", sim_flags.config_path, "experiment config file")->required();
  sim->add_option("--replications", sim_flags.replications, "Monte-Carlo replications");
  sim->add_option("--seed", sim_flags.seed, "RNG seed");
  sim->add_option("--workers", sim_flags.workers,
                  "parallel workers (default: SSALT_WORKERS or hardware)");
  sim->add_option("--contaminate", sim_flags.contaminate, "target:eps[,eps...] e.g. a1:0.05,0.1");
  sim->add_option("--out", sim_flags.out_dir, "output directory for study CSVs");

  std::string report_dir;
  CLI::App* rep = app.add_subcommand("report", "Summarize study CSVs into text + SVG charts");
  rep->add_option("--dir", report_dir, "directory holding rmse.csv and coverage.csv")->required();

  CLI11_PARSE(app, argc, argv);

  if (fit->parsed()) return run_fit(fit_flags);
  if (chars->parsed()) return run_characteristics(char_flags);
  if (sim->parsed()) return run_simulate(sim_flags);
  if (rep->parsed()) return run_report(report_dir);
  return 1;
}
