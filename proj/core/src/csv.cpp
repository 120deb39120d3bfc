#include "rdml/csv.hpp"

#include "rdml/errors.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>

namespace rdml {

namespace {

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    fields.push_back(cur);
    return fields;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
}

double parse_number(const std::string& field, std::size_t line_no) {
    const std::string_view sv = trim(field);
    double value = 0.0;
    const auto* first = sv.data();
    const auto* last = sv.data() + sv.size();
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last || sv.empty()) {
        throw ParseError("load_csv: non-numeric cell '" + std::string(sv) + "'", line_no);
    }
    return value;
}

} // namespace

Dataset load_csv(const std::string& path, int label_column, bool has_header) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError("load_csv: cannot open '" + path + "'", 0);
    }

    std::vector<std::vector<double>> rows;
    std::string line;
    std::size_t line_no = 0;
    std::size_t width = 0;
    bool header_pending = has_header;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (header_pending) {
            header_pending = false;
            continue;
        }
        const auto fields = split_fields(line);
        if (width == 0) {
            width = fields.size();
            if (width < 2) {
                throw ParseError("load_csv: need at least one feature and a label column",
                                 line_no);
            }
        } else if (fields.size() != width) {
            throw ParseError("load_csv: ragged row, expected " + std::to_string(width) +
                                 " cells, got " + std::to_string(fields.size()),
                             line_no);
        }
        std::vector<double> row;
        row.reserve(width);
        for (const auto& f : fields) row.push_back(parse_number(f, line_no));
        rows.push_back(std::move(row));
    }
    if (rows.empty()) {
        throw ParseError("load_csv: no data rows in '" + path + "'", line_no);
    }

    const int cols = static_cast<int>(width);
    const int label = label_column < 0 ? cols + label_column : label_column;
    if (label < 0 || label >= cols) {
        throw ParseError("load_csv: label column " + std::to_string(label_column) +
                             " out of range for " + std::to_string(cols) + " columns",
                         1);
    }

    Dataset ds;
    const int n = static_cast<int>(rows.size());
    const int d = cols - 1;
    ds.X.resize(n, d);
    ds.y.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const auto& row = rows[static_cast<std::size_t>(i)];
        const double raw = row[static_cast<std::size_t>(label)];
        const double rounded = std::nearbyint(raw);
        if (std::abs(raw - rounded) > 1e-9) {
            throw ParseError("load_csv: label value is not an integer",
                             static_cast<std::size_t>(i) + 1 + (has_header ? 1 : 0));
        }
        ds.y[static_cast<std::size_t>(i)] = static_cast<int>(rounded);
        int c = 0;
        for (int j = 0; j < cols; ++j) {
            if (j == label) continue;
            ds.X(i, c++) = row[static_cast<std::size_t>(j)];
        }
    }
    validate_dataset(ds);
    return ds;
}

void save_csv(const Dataset& ds, const std::string& path, bool write_header) {
    std::ofstream out(path);
    if (!out) {
        throw ParseError("save_csv: cannot open '" + path + "' for writing", 0);
    }
    if (write_header) {
        for (int j = 0; j < ds.dim(); ++j) out << "f" << j << ",";
        out << "label\n";
    }
    char buf[64];
    for (int i = 0; i < ds.n(); ++i) {
        for (int j = 0; j < ds.dim(); ++j) {
            std::snprintf(buf, sizeof(buf), "%.17g", ds.X(i, j));
            out << buf << ",";
        }
        out << ds.y[static_cast<std::size_t>(i)] << "\n";
    }
    if (!out) {
        throw ParseError("save_csv: write to '" + path + "' failed", 0);
    }
}

std::vector<int> load_index_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError("load_index_file: cannot open '" + path + "'", 0);
    }
    std::vector<int> out;
    int value = 0;
    while (in >> value) out.push_back(value);
    if (!in.eof()) {
        throw ParseError("load_index_file: non-integer entry in '" + path + "'",
                         out.size() + 1);
    }
    return out;
}

void save_index_file(const std::vector<int>& indices, const std::string& path) {
    std::ofstream out(path);
    if (!out) {
        throw ParseError("save_index_file: cannot open '" + path + "' for writing", 0);
    }
    for (const int i : indices) out << i << "\n";
}

} // namespace rdml
