#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace specest {

// Shortest decimal string that round-trips the double exactly.
std::string fmt_double(double x);

// Parses a CSV cell as a double; throws std::invalid_argument on garbage.
double parse_double(const std::string& cell);

// Splits one CSV line on commas (no quoting; numeric files only).
std::vector<std::string> split_csv_line(const std::string& line);

// Reads a one-value-per-line file (blank lines and lines starting with '#' skipped).
std::vector<double> read_value_column(std::istream& in);

}  // namespace specest
