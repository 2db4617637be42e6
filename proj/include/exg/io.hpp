#pragma once

// Plain-text sample files: one number per line. Blank lines and lines
// starting with '#' are skipped. A single non-numeric first line is taken as
// a CSV column header.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "exg/error.hpp"

namespace exg {

namespace detail {

inline std::string_view trim_ws(std::string_view s) {
    const auto not_ws = [](char c) { return c != ' ' && c != '\t' && c != '\r' && c != '\n'; };
    const auto b = std::find_if(s.begin(), s.end(), not_ws);
    const auto e = std::find_if(s.rbegin(), s.rend(), not_ws).base();
    return b < e ? std::string_view(&*b, static_cast<std::size_t>(e - b)) : std::string_view{};
}

inline bool parse_double(std::string_view s, double& out) {
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc() && ptr == s.data() + s.size();
}

}  // namespace detail

inline std::vector<double> read_sample(std::istream& in, const std::string& name = "<input>") {
    std::vector<double> values;
    std::string line;
    std::size_t line_no = 0;
    bool seen_content = false;
    while (std::getline(in, line)) {
        ++line_no;
        const auto text = detail::trim_ws(line);
        if (text.empty() || text.front() == '#') continue;
        double v = 0.0;
        if (!detail::parse_double(text, v)) {
            if (!seen_content) {
                seen_content = true;  // header
                continue;
            }
            throw data_error(name + ":" + std::to_string(line_no) + ": not a number: '" + std::string(text) + "'");
        }
        seen_content = true;
        if (!std::isfinite(v)) {
            throw data_error(name + ":" + std::to_string(line_no) + ": value is not finite: '" + std::string(text) +
                             "'");
        }
        values.push_back(v);
    }
    if (values.empty()) throw data_error(name + ": no observations");
    return values;
}

inline std::vector<double> read_sample(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw data_error("cannot open '" + path + "'");
    return read_sample(in, path);
}

/// Shortest text that reads back to exactly `v`.
inline std::string format_double(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

inline void write_sample(std::ostream& out, const std::vector<double>& values) {
    for (double v : values) out << format_double(v) << '\n';
}

}  // namespace exg
