// SPDX-License-Identifier: MIT
#include "mtdd/black.hpp"

#include <cmath>
#include <string>

namespace mtdd {

void OptionSpec::validate() const {
    if (!(strike > 0) || !std::isfinite(strike)) throw invalid_input("strike must be positive");
}

void Market::validate() const {
    if (!(spot > 0) || !std::isfinite(spot)) throw invalid_input("spot must be positive");
    if (!(maturity > 0) || !std::isfinite(maturity)) throw invalid_input("maturity must be positive");
    if (!std::isfinite(rate) || !std::isfinite(dividend)) throw invalid_input("rates must be finite");
}

void MarketParams::validate() const {
    market().validate();
    if (!(vol > 0) || !std::isfinite(vol)) throw invalid_input("vol must be positive");
}

double forward_price(const Market& m) { return m.spot * std::exp(m.drift() * m.maturity); }

double relative_moneyness(double forward, double strike) {
    if (!(forward > 0)) throw invalid_input("relative_moneyness: forward must be positive");
    return (forward - strike) / forward;
}

double black_price(const MarketParams& params, const OptionSpec& spec) {
    return params.discount() *
           expected_payoff_bsm(forward_price(params), spec, params.vol, params.maturity);
}

double black_vega(const MarketParams& params, const OptionSpec& spec) {
    const double sqrt_t = std::sqrt(params.maturity);
    const double v = params.vol * sqrt_t;
    if (v < kMinTotalStddev) return 0.0;
    const double forward = forward_price(params);
    const double d1 = (std::log(forward / spec.strike) + v * v / 2) / v;
    return params.discount() * forward * norm_pdf(d1) * sqrt_t;
}

double implied_vol(double target_price, const Market& market, const OptionSpec& spec,
                   const ImpliedVolOptions& options) {
    market.validate();
    spec.validate();

    const double df = market.discount();
    const double forward = forward_price(market);
    const bool call = spec.kind == OptionKind::call;
    const double lower_bound = df * (call ? std::max(forward - spec.strike, 0.0)
                                          : std::max(spec.strike - forward, 0.0));
    const double upper_bound = df * (call ? forward : spec.strike);
    if (!(target_price > lower_bound && target_price < upper_bound)) {
        throw price_out_of_bounds("implied_vol: target " + std::to_string(target_price) +
                                  " outside (" + std::to_string(lower_bound) + ", " +
                                  std::to_string(upper_bound) + ")");
    }

    auto price_at = [&](double vol) { return black_price(with_vol(market, vol), spec); };

    double lo = options.lower;
    double hi = options.upper;
    // Very high total variance: widen upward until the bracket holds.
    while (price_at(hi) < target_price) {
        hi *= 2.0;
        if (hi > 1e3) throw convergence_error("implied_vol: target above the price at vol 1000");
    }
    if (price_at(lo) > target_price) {
        throw convergence_error("implied_vol: target below the price at the lower vol bracket");
    }

    // Manaster-Koehler style start: the inflection point of price in σ.
    const double log_moneyness = std::abs(std::log(forward / spec.strike));
    double vol = std::sqrt(2.0 * log_moneyness / market.maturity);
    if (!(vol > lo && vol < hi)) vol = std::clamp(0.2, lo, hi);

    for (int iter = 0; iter < options.max_iterations; ++iter) {
        const MarketParams p = with_vol(market, vol);
        const double price = black_price(p, spec);
        if (price == target_price) return vol;
        if (price < target_price) lo = vol; else hi = vol;

        // Newton on ln(price): far out of the money the price is exponential in σ.
        const double vega = black_vega(p, spec);
        double next = price > 0.0 && vega > 0.0 ? vol - std::log(price / target_price) * price / vega : lo - 1.0;
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);

        if (std::abs(next - vol) <= options.tolerance || hi - lo <= options.tolerance) return next;
        vol = next;
    }
    throw convergence_error("implied_vol: iteration cap reached");
}

}  // namespace mtdd
