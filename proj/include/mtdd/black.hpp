// SPDX-License-Identifier: MIT
#pragma once

#include <algorithm>
#include <cmath>
#include <concepts>

#include "mtdd/distributions.hpp"
#include "mtdd/errors.hpp"

namespace mtdd {

enum class OptionKind { call, put };

struct OptionSpec {
    double strike = 0.0;
    OptionKind kind = OptionKind::call;

    void validate() const;
};

/// Market state without the volatility: what an implied-vol solve conditions on.
struct Market {
    double spot = 0.0;
    double rate = 0.0;
    double dividend = 0.0;
    double maturity = 0.0;

    double drift() const noexcept { return rate - dividend; }
    double discount() const noexcept { return std::exp(-rate * maturity); }
    void validate() const;
};

/// (S₀, r, q, σ, T). The drift μ = r − q is derived, never stored.
struct MarketParams {
    double spot = 0.0;
    double rate = 0.0;
    double dividend = 0.0;
    double vol = 0.0;
    double maturity = 0.0;

    double drift() const noexcept { return rate - dividend; }
    double discount() const noexcept { return std::exp(-rate * maturity); }
    Market market() const noexcept { return {spot, rate, dividend, maturity}; }
    void validate() const;
};

inline MarketParams with_vol(const Market& m, double vol) {
    return {m.spot, m.rate, m.dividend, vol, m.maturity};
}

/// S₀·exp((r − q)T).
double forward_price(const Market& m);
inline double forward_price(const MarketParams& p) { return forward_price(p.market()); }

/// k = (F − K)/F; zero at the money forward.
double relative_moneyness(double forward, double strike);

/// Total standard deviations below this go to the intrinsic branch.
inline constexpr double kMinTotalStddev = 1e-12;

/// Undiscounted Q-expectation of the payoff at maturity for a lognormal
/// forward: F·N(d₁) − K·N(d₂) for calls, K·N(−d₂) − F·N(−d₁) for puts.
template <std::floating_point Scalar>
Scalar expected_payoff_bsm(Scalar forward, Scalar strike, OptionKind kind, Scalar vol, Scalar horizon) {
    const Scalar v = vol * std::sqrt(horizon);
    if (v < Scalar(kMinTotalStddev)) {
        return kind == OptionKind::call ? std::max(forward - strike, Scalar(0))
                                        : std::max(strike - forward, Scalar(0));
    }
    const Scalar d1 = (std::log(forward / strike) + v * v / 2) / v;
    const Scalar d2 = d1 - v;
    if (kind == OptionKind::call) return forward * norm_cdf(d1) - strike * norm_cdf(d2);
    return strike * norm_cdf(-d2) - forward * norm_cdf(-d1);
}

inline double expected_payoff_bsm(double forward, const OptionSpec& spec, double vol, double horizon) {
    return expected_payoff_bsm(forward, spec.strike, spec.kind, vol, horizon);
}

/// e^{−rT}·expected_payoff_bsm(F, K, σ, T).
double black_price(const MarketParams& params, const OptionSpec& spec);

/// ∂(black_price)/∂σ.
double black_vega(const MarketParams& params, const OptionSpec& spec);

struct ImpliedVolOptions {
    double lower = 1e-6;
    double upper = 5.0;
    double tolerance = 1e-12;  ///< on σ; the contract is 1e-8
    int max_iterations = 100;
};

/// Black volatility reproducing `target_price`. Safeguarded Newton on σ with
/// bisection fallback inside a maintained bracket.
///
/// Throws price_out_of_bounds when the target is not strictly inside the
/// no-arbitrage band and convergence_error when the iteration cap is hit.
double implied_vol(double target_price, const Market& market, const OptionSpec& spec,
                   const ImpliedVolOptions& options = {});

}  // namespace mtdd
