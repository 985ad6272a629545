// SPDX-License-Identifier: MIT
#pragma once

#include <Eigen/Core>

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

#include "mtdd/returns.hpp"

namespace mtdd {

/// Daily closes with an optional annualized implied-vol column.
struct PriceData {
    PriceSeries series;
    std::optional<Eigen::VectorXd> implied_vol;
};

/// Strict YYYY-MM-DD.
std::optional<Date> parse_iso_date(std::string_view text);
std::string format_iso_date(Date date);

/// Parses `date,close[,implied_vol]` with a header line. Rejects unparseable
/// fields, non-positive values, duplicate and out-of-order dates; every
/// error names the offending line. The result holds at least two points.
PriceData parse_price_csv(std::istream& in, const std::string& source = "<stream>");

PriceData csv_ingest(const std::filesystem::path& path);

void write_price_csv(std::ostream& out, const PriceData& data);

}  // namespace mtdd
