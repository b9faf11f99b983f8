#include "specest/io_util.hpp"

#include <charconv>
#include <istream>
#include <stdexcept>
#include <system_error>

namespace specest {

std::string fmt_double(double x) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), x);
    if (res.ec != std::errc{}) throw std::runtime_error("fmt_double: conversion failed");
    return std::string(buf, res.ptr);
}

double parse_double(const std::string& cell) {
    size_t begin = cell.find_first_not_of(" \t\r");
    size_t end = cell.find_last_not_of(" \t\r");
    if (begin == std::string::npos)
        throw std::invalid_argument("empty numeric cell");
    const char* first = cell.data() + begin;
    const char* last = cell.data() + end + 1;
    double value = 0.0;
    auto res = std::from_chars(first, last, value);
    if (res.ec != std::errc{} || res.ptr != last)
        throw std::invalid_argument("cannot parse number: '" + cell + "'");
    return value;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    size_t start = 0;
    while (true) {
        size_t comma = line.find(',', start);
        if (comma == std::string::npos) {
            cells.push_back(line.substr(start));
            break;
        }
        cells.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
    return cells;
}

std::vector<double> read_value_column(std::istream& in) {
    std::vector<double> values;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        size_t begin = line.find_first_not_of(" \t");
        if (begin == std::string::npos) continue;
        if (line[begin] == '#') continue;
        values.push_back(parse_double(line));
    }
    return values;
}

}  // namespace specest
