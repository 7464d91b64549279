#pragma once

#include <charconv>
#include <string>
#include <string_view>
#include <vector>

#include "walkdist/graph.hpp"

namespace walkdist {

/// A labelled square matrix as read back from CSV.
struct LabelledMatrix {
    std::vector<std::string> labels;
    Matrix values;
};

namespace detail {

inline std::vector<std::string_view> split_csv_line(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        out.push_back(line.substr(start, comma - start));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

inline double parse_csv_double(std::string_view s) {
    double x = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), x);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
        throw InvalidGraph("malformed number '" + std::string(s) + "' in matrix CSV");
    }
    return x;
}

}  // namespace detail

/// First row and first column hold the labels; values use 17 significant digits.
/// Lines starting with '#' are metadata and are skipped by matrix_from_csv.
inline std::string matrix_to_csv(const std::vector<std::string>& labels, const Matrix& m) {
    std::string out = "vertex";
    for (const auto& l : labels) out += "," + l;
    out += '\n';
    for (Index i = 0; i < m.rows(); ++i) {
        out += labels[static_cast<std::size_t>(i)];
        for (Index j = 0; j < m.cols(); ++j) out += "," + format_double(m(i, j));
        out += '\n';
    }
    return out;
}

inline LabelledMatrix matrix_from_csv(std::string_view text) {
    std::vector<std::string_view> lines;
    std::size_t start = 0;
    while (start < text.size()) {
        auto end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        auto line = text.substr(start, end - start);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (!line.empty() && line.front() != '#') lines.push_back(line);
        start = end + 1;
    }
    if (lines.empty()) throw InvalidGraph("empty matrix CSV");
    const auto header = detail::split_csv_line(lines[0]);
    const auto n = static_cast<Index>(header.size()) - 1;
    if (static_cast<Index>(lines.size()) - 1 != n) throw InvalidGraph("matrix CSV is not square");
    LabelledMatrix out;
    for (std::size_t k = 1; k < header.size(); ++k) out.labels.emplace_back(header[k]);
    out.values.resize(n, n);
    for (Index i = 0; i < n; ++i) {
        const auto cells = detail::split_csv_line(lines[static_cast<std::size_t>(i) + 1]);
        if (static_cast<Index>(cells.size()) != n + 1) throw InvalidGraph("ragged row in matrix CSV");
        for (Index j = 0; j < n; ++j) out.values(i, j) = detail::parse_csv_double(cells[static_cast<std::size_t>(j) + 1]);
    }
    return out;
}

}  // namespace walkdist
