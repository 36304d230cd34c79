#pragma once

// Dataset emission. Data files are byte-deterministic: fixed 12-significant-
// digit formatting, no timestamps, rows in grid order. Run metadata belongs
// in the sidecar, not the data file.

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "xyent/scan.hpp"

namespace xyent {

inline std::string fmt_g12(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

inline std::string scan_csv(const std::vector<ScanRow>& rows) {
    std::string out = "r,h,n,density,derivative,status\n";
    for (const ScanRow& row : rows) {
        out += fmt_g12(row.r);
        out += ',';
        out += fmt_g12(row.h);
        out += ',';
        out += row.n ? std::to_string(*row.n) : "inf";
        out += ',';
        if (row.status == "ok") out += fmt_g12(row.density);
        out += ',';
        if (row.derivative) out += fmt_g12(*row.derivative);
        out += ',';
        out += row.status;
        out += '\n';
    }
    return out;
}

namespace detail {

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    fields.push_back(cur);
    return fields;
}

}  // namespace detail

inline std::vector<ScanRow> parse_scan_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != "r,h,n,density,derivative,status")
        throw std::invalid_argument("parse_scan_csv: missing or malformed header");
    std::vector<ScanRow> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const std::vector<std::string> f = detail::split_csv_line(line);
        if (f.size() != 6)
            throw std::invalid_argument("parse_scan_csv: expected 6 fields per row");
        ScanRow row;
        row.r = std::stod(f[0]);
        row.h = std::stod(f[1]);
        if (f[2] != "inf") row.n = std::stoll(f[2]);
        if (!f[3].empty()) row.density = std::stod(f[3]);
        if (!f[4].empty()) row.derivative = std::stod(f[4]);
        row.status = f[5];
        rows.push_back(row);
    }
    return rows;
}

inline void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << content;
    if (!out) throw std::runtime_error("write failed: " + path);
}

inline std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open for reading: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace xyent
