#include "report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace report {
namespace {

struct RmseRow {
  std::string target;
  double epsilon;
  double beta;
  std::string quantity;
  double value;
};

struct CoverageRow {
  std::string target;
  double epsilon;
  double beta;
  std::string quantity;
  std::string form;
  double value;
};

std::vector<std::vector<std::string>> read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("missing input file: " + path);
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    rows.push_back(std::move(fields));
  }
  if (rows.empty()) throw std::runtime_error("empty input file: " + path);
  return rows;
}

double to_double(const std::string& s, const std::string& path) {
  try {
    return std::stod(s);
  } catch (const std::exception&) {
    throw std::runtime_error("malformed number '" + s + "' in " + path);
  }
}

std::string trim_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

// Minimal line chart: one polyline per beta of RMSE against epsilon.
void write_svg(const std::string& path, const std::string& title,
               const std::map<double, std::vector<std::pair<double, double>>>& series) {
  constexpr int kWidth = 640, kHeight = 420;
  constexpr double kLeft = 70, kRight = 610, kTop = 50, kBottom = 370;
  double x_min = 1e300, x_max = -1e300, y_max = 0.0;
  for (const auto& [beta, points] : series) {
    for (const auto& [x, y] : points) {
      x_min = std::min(x_min, x);
      x_max = std::max(x_max, x);
      y_max = std::max(y_max, y);
    }
  }
  if (!(x_max > x_min)) {
    x_min -= 0.01;
    x_max += 0.01;
  }
  if (!(y_max > 0.0)) y_max = 1.0;
  y_max *= 1.08;

  const auto sx = [&](double x) {
    return kLeft + (x - x_min) / (x_max - x_min) * (kRight - kLeft);
  };
  const auto sy = [&](double y) { return kBottom - y / y_max * (kBottom - kTop); };

  static const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                   "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
      << kHeight << "\" viewBox=\"0 0 " << kWidth << " " << kHeight << "\">\n";
  out << "  <rect x=\"0\" y=\"0\" width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" fill=\"white\"/>\n";
  out << "  <text x=\"" << kWidth / 2 << "\" y=\"28\" text-anchor=\"middle\" "
      << "font-family=\"sans-serif\" font-size=\"16\">" << title << "</text>\n";
  out << "  <line x1=\"" << kLeft << "\" y1=\"" << kBottom << "\" x2=\"" << kRight << "\" y2=\""
      << kBottom << "\" stroke=\"black\"/>\n";
  out << "  <line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft << "\" y2=\""
      << kBottom << "\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    const double x = x_min + (x_max - x_min) * i / 4.0;
    const double y = y_max / 1.08 * i / 4.0;
    out << "  <text x=\"" << sx(x) << "\" y=\"" << kBottom + 20
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">"
        << trim_number(x) << "</text>\n";
    out << "  <text x=\"" << kLeft - 8 << "\" y=\"" << sy(y) + 4
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
        << trim_number(y) << "</text>\n";
  }
  out << "  <text x=\"" << (kLeft + kRight) / 2 << "\" y=\"" << kHeight - 8
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">"
      << "contamination fraction</text>\n";
  int color = 0;
  double legend_y = kTop + 4;
  for (const auto& [beta, points] : series) {
    const char* stroke = kPalette[color % 8];
    out << "  <polyline fill=\"none\" stroke=\"" << stroke << "\" stroke-width=\"2\" points=\"";
    for (const auto& [x, y] : points) out << sx(x) << "," << sy(y) << " ";
    out << "\"/>\n";
    for (const auto& [x, y] : points)
      out << "  <circle cx=\"" << sx(x) << "\" cy=\"" << sy(y) << "\" r=\"3\" fill=\"" << stroke
          << "\"/>\n";
    out << "  <text x=\"" << kRight - 90 << "\" y=\"" << legend_y
        << "\" font-family=\"sans-serif\" font-size=\"12\" fill=\"" << stroke << "\">beta = "
        << trim_number(beta) << "</text>\n";
    legend_y += 16;
    ++color;
  }
  out << "</svg>\n";
}

}  // namespace

int generate(const std::string& dir) {
  const std::string rmse_path = dir + "/rmse.csv";
  const std::string coverage_path = dir + "/coverage.csv";

  std::vector<RmseRow> rmse;
  {
    const auto rows = read_csv(rmse_path);
    for (std::size_t i = 1; i < rows.size(); ++i) {
      const auto& f = rows[i];
      if (f.size() != 5) throw std::runtime_error("malformed row in " + rmse_path);
      rmse.push_back(RmseRow{f[0], to_double(f[1], rmse_path), to_double(f[2], rmse_path), f[3],
                             to_double(f[4], rmse_path)});
    }
  }
  std::vector<CoverageRow> coverage;
  {
    const auto rows = read_csv(coverage_path);
    for (std::size_t i = 1; i < rows.size(); ++i) {
      const auto& f = rows[i];
      if (f.size() != 6) throw std::runtime_error("malformed row in " + coverage_path);
      coverage.push_back(CoverageRow{f[0], to_double(f[1], coverage_path),
                                     to_double(f[2], coverage_path), f[3], f[4],
                                     to_double(f[5], coverage_path)});
    }
  }

  // summary.txt: RMSE and coverage grids, one block per (target, epsilon)
  {
    std::ofstream out(dir + "/summary.txt");
    if (!out) throw std::runtime_error("cannot write " + dir + "/summary.txt");
    out << "study summary\n=============\n\n";
    std::set<std::pair<std::string, double>> cells;
    for (const auto& r : rmse) cells.insert({r.target, r.epsilon});
    for (const auto& [target, eps] : cells) {
      out << "target " << target << ", epsilon " << trim_number(eps) << "\n";
      out << "  rmse:\n";
      for (const auto& r : rmse) {
        if (r.target != target || r.epsilon != eps) continue;
        out << "    beta " << trim_number(r.beta) << "  " << r.quantity << " = " << r.value
            << "\n";
      }
      out << "  coverage:\n";
      for (const auto& c : coverage) {
        if (c.target != target || c.epsilon != eps) continue;
        out << "    beta " << trim_number(c.beta) << "  " << c.quantity << " (" << c.form
            << ") = " << c.value << "\n";
      }
      out << "\n";
    }
  }

  // one SVG per (target, quantity): RMSE against epsilon, a line per beta
  std::set<std::pair<std::string, std::string>> charts;
  for (const auto& r : rmse) charts.insert({r.target, r.quantity});
  int written = 0;
  for (const auto& [target, quantity] : charts) {
    std::map<double, std::vector<std::pair<double, double>>> series;
    for (const auto& r : rmse) {
      if (r.target != target || r.quantity != quantity) continue;
      series[r.beta].push_back({r.epsilon, r.value});
    }
    for (auto& [beta, points] : series) std::sort(points.begin(), points.end());
    const std::string path = dir + "/rmse_" + target + "_" + quantity + ".svg";
    write_svg(path, "RMSE of " + quantity + " (contamination in " + target + ")", series);
    ++written;
  }
  return written;
}

}  // namespace report
