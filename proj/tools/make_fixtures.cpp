// SPDX-License-Identifier: MIT
//
// Regenerates the synthetic CSV fixtures under tests/data.
//
//   make_fixtures <output-dir>
//
// gbm_daily.csv     2520 trading days of GBM, S0=100, mu=0.05, sigma=0.2, seed 20080225
// gbm_bias.csv      1000 days, mu=0.05, sigma=0.15, seed 4042007; the implied_vol column is
//                   the strike-mode model vol of an ATM 30-day call priced from the 90-day
//                   historical vol (the bias-study pipeline itself), 0.15 before the first window
// constant.csv      120 days at a constant close of 50

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "mtdd/csv.hpp"
#include "mtdd/empirics.hpp"
#include "mtdd/oracles.hpp"

namespace {

using namespace mtdd;

std::vector<Date> trading_days(std::size_t n) {
    std::vector<Date> out;
    Date d{std::chrono::year{2004} / std::chrono::April / 1};
    while (out.size() < n) {
        const std::chrono::weekday wd{d};
        if (wd != std::chrono::Saturday && wd != std::chrono::Sunday) out.push_back(d);
        d += std::chrono::days{1};
    }
    return out;
}

PriceData gbm_data(int days, double mu, double sigma, std::uint64_t seed) {
    const PathSeries path = gbm_simulate(100.0, mu, sigma, days / 252.0, days - 1, seed);
    PriceData data;
    data.series.dates = trading_days(static_cast<std::size_t>(days));
    // Round through the CSV precision so the fixture and its in-memory twin agree.
    data.series.closes = path.values.unaryExpr([](double v) { return std::stod(format_number(v)); });
    return data;
}

void write(const std::filesystem::path& path, const PriceData& data) {
    std::ofstream out(path);
    write_price_csv(out, data);
    std::cout << "wrote " << path.string() << '\n';
}

}  // namespace

int main(int argc, char** argv) {
    if (argc != 2) {
        std::cerr << "usage: make_fixtures <output-dir>\n";
        return 2;
    }
    const std::filesystem::path dir = argv[1];
    std::filesystem::create_directories(dir);

    write(dir / "gbm_daily.csv", gbm_data(2520, 0.05, 0.2, 20080225));

    PriceData bias = gbm_data(1000, 0.05, 0.15, 4042007);
    const BiasConfig cfg;
    Eigen::VectorXd iv = Eigen::VectorXd::Constant(bias.series.size(), 0.15);
    for (const auto& e : historical_vol(bias.series, cfg.window, cfg.annualization)) {
        const auto i = static_cast<Eigen::Index>(e.end_index);
        iv(i) = std::stod(format_number(*atm_model_vol(bias.series.closes(i), e.sigma, cfg)));
    }
    bias.implied_vol = iv;
    write(dir / "gbm_bias.csv", bias);

    PriceData flat;
    flat.series.dates = trading_days(120);
    flat.series.closes = Eigen::VectorXd::Constant(120, 50.0);
    write(dir / "constant.csv", flat);
    return 0;
}
