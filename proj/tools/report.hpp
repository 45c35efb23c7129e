#pragma once

#include <string>

namespace report {

// Aggregates a study output directory (rmse.csv, coverage.csv) into
// summary.txt and one RMSE-vs-epsilon SVG chart per (target, quantity).
// Returns the number of SVG files written; throws std::runtime_error with a
// file name when an input is missing or malformed.
int generate(const std::string& dir);

}  // namespace report
