#include "core/io.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>

#include "core/errors.hpp"

namespace ssalt {

std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

std::string strip(const std::string& line) {
  std::string s = line;
  const auto hash = s.find('#');
  if (hash != std::string::npos) s.erase(hash);
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

double parse_double(const std::string& text, const std::string& where) {
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (end == text.c_str() || *end != '\0' || errno == ERANGE)
    raise(errc::io, "cannot parse number '" + text + "' (" + where + ")");
  return v;
}

std::vector<double> parse_double_list(const std::string& text, const std::string& where) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const std::string t = strip(item);
    if (!t.empty()) out.push_back(parse_double(t, where));
  }
  if (out.empty()) raise(errc::io, "empty list for " + where);
  return out;
}

std::string dirname_of(const std::string& path) {
  const auto slash = path.find_last_of('/');
  if (slash == std::string::npos) return ".";
  if (slash == 0) return "/";
  return path.substr(0, slash);
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) raise(errc::io, "cannot open '" + path + "' for writing");
  return out;
}

}  // namespace

ReadFailuresResult read_failures(const std::string& path, const ExperimentConfig& config) {
  validate(config.profile);
  std::ifstream in(path);
  if (!in) raise(errc::io, "cannot open failure-time file '" + path + "'");
  std::vector<double> times;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = strip(line);
    if (t.empty()) continue;
    const double v = parse_double(t, path + ":" + std::to_string(line_no));
    if (v < 0.0)
      raise(errc::io, "negative failure time at " + path + ":" + std::to_string(line_no));
    times.push_back(v);
  }
  if (times.size() > config.n)
    raise(errc::invalid_argument, "file lists " + std::to_string(times.size()) +
                                      " failures but only " + std::to_string(config.n) +
                                      " units were on test");
  ReadFailuresResult out;
  out.sample = split_sample(std::move(times), config.n, config.profile, &out.dropped);
  return out;
}

void write_failures(const std::string& path, const SsaltSample& sample) {
  std::ofstream out = open_out(path);
  for (double t : sample.times_step1) out << format_g17(t) << "\n";
  for (double t : sample.times_step2) out << format_g17(t) << "\n";
}

void write_fit_table(std::vector<FitTableRow> rows, const std::string& path) {
  if (rows.empty()) raise(errc::invalid_argument, "fit table must have at least one row");
  std::sort(rows.begin(), rows.end(),
            [](const FitTableRow& a, const FitTableRow& b) { return a.beta < b.beta; });
  std::ofstream out = open_out(path);
  out << "beta,a0,a0_lo,a0_hi,a1,a1_lo,a1_hi,eta,eta_lo,eta_hi,converged\n";
  for (const FitTableRow& r : rows) {
    out << format_g17(r.beta) << ',' << format_g17(r.a0) << ',' << format_g17(r.a0_lo) << ','
        << format_g17(r.a0_hi) << ',' << format_g17(r.a1) << ',' << format_g17(r.a1_lo) << ','
        << format_g17(r.a1_hi) << ',' << format_g17(r.eta) << ',' << format_g17(r.eta_lo) << ','
        << format_g17(r.eta_hi) << ',' << (r.converged ? 1 : 0) << "\n";
  }
}

std::vector<FitTableRow> read_fit_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) raise(errc::io, "cannot open fit table '" + path + "'");
  std::string line;
  if (!std::getline(in, line)) raise(errc::io, "empty fit table '" + path + "'");
  std::vector<FitTableRow> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (strip(line).empty()) continue;
    std::stringstream ss(line);
    std::string field;
    std::vector<std::string> fields;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (fields.size() != 11)
      raise(errc::io, "bad fit-table row at " + path + ":" + std::to_string(line_no));
    const std::string where = path + ":" + std::to_string(line_no);
    FitTableRow r;
    r.beta = parse_double(fields[0], where);
    r.a0 = parse_double(fields[1], where);
    r.a0_lo = parse_double(fields[2], where);
    r.a0_hi = parse_double(fields[3], where);
    r.a1 = parse_double(fields[4], where);
    r.a1_lo = parse_double(fields[5], where);
    r.a1_hi = parse_double(fields[6], where);
    r.eta = parse_double(fields[7], where);
    r.eta_lo = parse_double(fields[8], where);
    r.eta_hi = parse_double(fields[9], where);
    r.converged = parse_double(fields[10], where) != 0.0;
    rows.push_back(r);
  }
  return rows;
}

void write_study_report(const StudyReport& report, const std::string& dir) {
  {
    std::ofstream out = open_out(dir + "/rmse.csv");
    out << "target,epsilon,beta,quantity,rmse\n";
    for (const RmseRow& r : report.rmse)
      out << r.target << ',' << format_g17(r.epsilon) << ',' << format_g17(r.beta) << ','
          << r.quantity << ',' << format_g17(r.value) << "\n";
  }
  {
    std::ofstream out = open_out(dir + "/coverage.csv");
    out << "target,epsilon,beta,quantity,ci_form,coverage\n";
    for (const CoverageRow& r : report.coverage)
      out << r.target << ',' << format_g17(r.epsilon) << ',' << format_g17(r.beta) << ','
          << r.quantity << ',' << r.ci_form << ',' << format_g17(r.value) << "\n";
  }
  {
    std::ofstream out = open_out(dir + "/cloud.csv");
    out << "target,epsilon,beta,replication,a0,a1,eta\n";
    for (const CloudRow& r : report.cloud)
      out << r.target << ',' << format_g17(r.epsilon) << ',' << format_g17(r.beta) << ','
          << r.replication << ',' << format_g17(r.a0) << ',' << format_g17(r.a1) << ','
          << format_g17(r.eta) << "\n";
  }
  {
    std::ofstream out = open_out(dir + "/study_log.csv");
    out << "replications,discarded,failed_fits\n";
    out << report.replications << ',' << report.discarded << ',' << report.failed_fits << "\n";
  }
}

namespace {

struct KeyValue {
  std::string section, key, value;
  std::size_t line_no;
};

std::vector<KeyValue> parse_key_values(const std::string& path) {
  std::ifstream in(path);
  if (!in) raise(errc::io, "cannot open config file '" + path + "'");
  std::vector<KeyValue> out;
  std::string line, section;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = strip(line);
    if (t.empty()) continue;
    if (t.front() == '[') {
      if (t.back() != ']')
        raise(errc::io, "malformed section header at " + path + ":" + std::to_string(line_no));
      section = t.substr(1, t.size() - 2);
      continue;
    }
    const auto eq = t.find('=');
    if (eq == std::string::npos)
      raise(errc::io, "expected key = value at " + path + ":" + std::to_string(line_no));
    std::string key = strip(t.substr(0, eq));
    std::string value = strip(t.substr(eq + 1));
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"')
      value = value.substr(1, value.size() - 2);
    if (key.empty() || value.empty())
      raise(errc::io, "empty key or value at " + path + ":" + std::to_string(line_no));
    out.push_back(KeyValue{section, key, value, line_no});
  }
  return out;
}

}  // namespace

AppConfig load_config(const std::string& path) {
  AppConfig cfg;
  const std::string base = dirname_of(path);
  for (const KeyValue& kv : parse_key_values(path)) {
    const std::string where = path + ":" + std::to_string(kv.line_no);
    if (kv.section == "profile") {
      cfg.has_profile = true;
      if (kv.key == "x0")
        cfg.profile.x0 = parse_double(kv.value, where);
      else if (kv.key == "x1")
        cfg.profile.x1 = parse_double(kv.value, where);
      else if (kv.key == "x2")
        cfg.profile.x2 = parse_double(kv.value, where);
      else if (kv.key == "tau1")
        cfg.profile.tau1 = parse_double(kv.value, where);
      else if (kv.key == "tau2")
        cfg.profile.tau2 = parse_double(kv.value, where);
      else
        raise(errc::io, "unknown [profile] key '" + kv.key + "' at " + where);
    } else if (kv.section == "data") {
      cfg.has_data = true;
      if (kv.key == "n")
        cfg.n = static_cast<std::size_t>(parse_double(kv.value, where));
      else if (kv.key == "path")
        cfg.data_path = kv.value.front() == '/' ? kv.value : base + "/" + kv.value;
      else if (kv.key == "time_unit")
        cfg.time_unit = kv.value;
      else
        raise(errc::io, "unknown [data] key '" + kv.key + "' at " + where);
    } else if (kv.section == "fit") {
      if (kv.key == "betas")
        cfg.fit.betas = parse_double_list(kv.value, where);
      else if (kv.key == "level")
        cfg.fit.level = parse_double(kv.value, where);
      else if (kv.key == "restarts")
        cfg.fit.restarts = static_cast<int>(parse_double(kv.value, where));
      else if (kv.key == "max_iters")
        cfg.fit.max_iters = static_cast<int>(parse_double(kv.value, where));
      else if (kv.key == "tol")
        cfg.fit.tol = parse_double(kv.value, where);
      else
        raise(errc::io, "unknown [fit] key '" + kv.key + "' at " + where);
    } else if (kv.section == "simulate") {
      SimulateSection& sim = cfg.simulate;
      if (kv.key == "a0")
        sim.truth.a0 = parse_double(kv.value, where);
      else if (kv.key == "a1")
        sim.truth.a1 = parse_double(kv.value, where);
      else if (kv.key == "eta")
        sim.truth.eta = parse_double(kv.value, where);
      else if (kv.key == "n")
        sim.n = static_cast<std::size_t>(parse_double(kv.value, where));
      else if (kv.key == "replications")
        sim.replications = static_cast<std::size_t>(parse_double(kv.value, where));
      else if (kv.key == "betas")
        sim.betas = parse_double_list(kv.value, where);
      else if (kv.key == "epsilons")
        sim.epsilons = parse_double_list(kv.value, where);
      else if (kv.key == "target")
        sim.target = kv.value;
      else if (kv.key == "window_upper")
        sim.window_upper = parse_double(kv.value, where);
      else if (kv.key == "seed")
        sim.seed = static_cast<std::uint64_t>(parse_double(kv.value, where));
      else if (kv.key == "level")
        sim.level = parse_double(kv.value, where);
      else if (kv.key == "mission_time")
        sim.mission_time = parse_double(kv.value, where);
      else if (kv.key == "quantile_p")
        sim.quantile_p = parse_double(kv.value, where);
      else
        raise(errc::io, "unknown [simulate] key '" + kv.key + "' at " + where);
    } else {
      raise(errc::io, "unknown section '[" + kv.section + "]' at " + where);
    }
  }
  return cfg;
}

}  // namespace ssalt
