// SPDX-License-Identifier: MIT
#include "mtdd/csv.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <vector>

#include "mtdd/table.hpp"

namespace mtdd {

namespace {

std::vector<std::string_view> split(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = line.find(',', start);
        out.push_back(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos) return out;
        start = pos + 1;
    }
}

std::optional<double> parse_decimal(std::string_view text) {
    double value = 0.0;
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value, std::chars_format::general);
    if (ec != std::errc{} || ptr != end || text.empty() || !std::isfinite(value)) return std::nullopt;
    return value;
}

template <typename Int>
bool parse_int(std::string_view text, Int& out) {
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, out);
    return ec == std::errc{} && ptr == end;
}

}  // namespace

std::optional<Date> parse_iso_date(std::string_view text) {
    if (text.size() != 10 || text[4] != '-' || text[7] != '-') return std::nullopt;
    int y = 0;
    unsigned m = 0;
    unsigned d = 0;
    if (!parse_int(text.substr(0, 4), y) || !parse_int(text.substr(5, 2), m) || !parse_int(text.substr(8, 2), d)) {
        return std::nullopt;
    }
    const std::chrono::year_month_day ymd{std::chrono::year{y}, std::chrono::month{m}, std::chrono::day{d}};
    if (!ymd.ok()) return std::nullopt;
    return Date{ymd};
}

std::string format_iso_date(Date date) {
    const std::chrono::year_month_day ymd{date};
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                  static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
    return buf;
}

PriceData parse_price_csv(std::istream& in, const std::string& source) {
    std::string line;
    std::size_t line_no = 0;

    auto next_line = [&]() -> bool {
        if (!std::getline(in, line)) return false;
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        return true;
    };

    if (!next_line()) throw data_error(source + ": empty file");
    bool with_iv = false;
    if (line == "date,close,implied_vol") {
        with_iv = true;
    } else if (line != "date,close") {
        throw data_error(source + ": header must be 'date,close' or 'date,close,implied_vol'", line_no);
    }
    const std::size_t width = with_iv ? 3 : 2;

    std::vector<Date> dates;
    std::vector<double> closes;
    std::vector<double> ivs;
    while (next_line()) {
        if (line.empty()) continue;
        const auto fields = split(line);
        if (fields.size() != width) {
            throw data_error(source + ": expected " + std::to_string(width) + " fields, got " +
                                 std::to_string(fields.size()), line_no);
        }
        const auto date = parse_iso_date(fields[0]);
        if (!date) throw data_error(source + ": bad date '" + std::string(fields[0]) + "'", line_no);
        const auto close = parse_decimal(fields[1]);
        if (!close) throw data_error(source + ": bad close '" + std::string(fields[1]) + "'", line_no);
        if (!(*close > 0)) throw data_error(source + ": close must be positive", line_no);
        if (!dates.empty()) {
            if (*date == dates.back()) throw data_error(source + ": duplicate date " + std::string(fields[0]), line_no);
            if (*date < dates.back()) throw data_error(source + ": date " + std::string(fields[0]) + " out of order", line_no);
        }
        if (with_iv) {
            const auto iv = parse_decimal(fields[2]);
            if (!iv) throw data_error(source + ": bad implied_vol '" + std::string(fields[2]) + "'", line_no);
            if (!(*iv > 0)) throw data_error(source + ": implied_vol must be positive", line_no);
            ivs.push_back(*iv);
        }
        dates.push_back(*date);
        closes.push_back(*close);
    }

    if (closes.size() < 2) {
        throw data_error(source + ": insufficient data, need at least 2 rows, got " + std::to_string(closes.size()));
    }

    PriceData data;
    data.series.dates = std::move(dates);
    data.series.closes = Eigen::Map<const Eigen::VectorXd>(closes.data(), static_cast<Eigen::Index>(closes.size()));
    if (with_iv) data.implied_vol = Eigen::Map<const Eigen::VectorXd>(ivs.data(), static_cast<Eigen::Index>(ivs.size()));
    return data;
}

PriceData csv_ingest(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw data_error("cannot open " + path.string());
    return parse_price_csv(in, path.string());
}

void write_price_csv(std::ostream& out, const PriceData& data) {
    out << (data.implied_vol ? "date,close,implied_vol\n" : "date,close\n");
    for (Eigen::Index i = 0; i < data.series.size(); ++i) {
        out << format_iso_date(data.series.dates[static_cast<std::size_t>(i)]) << ','
            << format_number(data.series.closes(i));
        if (data.implied_vol) out << ',' << format_number((*data.implied_vol)(i));
        out << '\n';
    }
}

}  // namespace mtdd
