// SPDX-License-Identifier: MIT
#include "mtdd/table.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "mtdd/errors.hpp"

namespace mtdd {

std::string format_number(double value) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", value == 0.0 ? 0.0 : value);  // no "-0"
    return buf;
}

std::string format_number(const std::optional<double>& value) {
    return value ? format_number(*value) : std::string{};
}

void Table::add_row(std::vector<std::string> row) {
    if (row.size() != header_.size()) throw invalid_input("Table: row width does not match header");
    rows_.push_back(std::move(row));
}

void Table::write_csv(std::ostream& out) const {
    auto line = [&](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << cells[i];
        out << '\n';
    };
    line(header_);
    for (const auto& r : rows_) line(r);
}

void Table::write_pretty(std::ostream& out) const {
    std::vector<std::size_t> width(header_.size());
    for (std::size_t c = 0; c < header_.size(); ++c) width[c] = header_[c].size();
    for (const auto& r : rows_)
        for (std::size_t c = 0; c < r.size(); ++c) width[c] = std::max(width[c], r[c].size());

    auto line = [&](const std::vector<std::string>& cells) {
        for (std::size_t c = 0; c < cells.size(); ++c) {
            out << (c ? "  " : "") << cells[c] << std::string(width[c] - cells[c].size(), ' ');
        }
        out << '\n';
    };
    line(header_);
    std::size_t total = 0;
    for (auto w : width) total += w;
    out << std::string(total + 2 * (width.empty() ? 0 : width.size() - 1), '-') << '\n';
    for (const auto& r : rows_) line(r);
}

std::string Table::csv() const {
    std::ostringstream os;
    write_csv(os);
    return os.str();
}

}  // namespace mtdd
