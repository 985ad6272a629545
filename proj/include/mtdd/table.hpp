// SPDX-License-Identifier: MIT
#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace mtdd {

/// Decimal at 10 significant digits ("%.10g"); the machine-readable format.
std::string format_number(double value);
/// Empty field when absent.
std::string format_number(const std::optional<double>& value);

/// Ordered string table rendered either as CSV (one header line, fixed
/// column order) or as an aligned human-readable listing.
class Table {
public:
    explicit Table(std::vector<std::string> header) : header_(std::move(header)) {}

    void add_row(std::vector<std::string> row);

    const std::vector<std::string>& header() const noexcept { return header_; }
    const std::vector<std::vector<std::string>>& rows() const noexcept { return rows_; }

    void write_csv(std::ostream& out) const;
    void write_pretty(std::ostream& out) const;
    std::string csv() const;

private:
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

}  // namespace mtdd
