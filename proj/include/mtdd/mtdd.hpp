// SPDX-License-Identifier: MIT
#pragma once

#include <optional>

#include "mtdd/black.hpp"

namespace mtdd {

/// Lower limit of the kernel integral over the dummy forward S′.
///   strike: ∫_K^∞, the practical call formula as printed (∫_0^K for puts);
///   zero:   ∫_0^∞, the particular solution of the discount PDE.
enum class LowerBoundMode { strike, zero };

struct QuadratureConfig {
    LowerBoundMode lower_bound_mode = LowerBoundMode::strike;
    int nodes = 256;
    double truncation_halfwidth = 8.0;  ///< kernel standard deviations
    double rel_tolerance = 1e-9;
    int max_nodes = 8192;  ///< doubling budget before convergence_error

    void validate() const;
};

struct MtddQuote {
    double price = 0.0;
    /// SigI_Model. Absent when the price lies outside the Black bounds.
    std::optional<double> equiv_implied_vol;
    /// Strike beyond the truncation window: the integration range is empty.
    bool degenerate = false;
    int nodes_used = 0;
};

/// Lognormal kernel in the dummy forward: density of S′ given mean `s_ref`
/// and log-variance vol²·horizon.
double mtdd_kernel(double s_dummy, double s_ref, double vol, double horizon);

/// Result of one converged kernel integral (undiscounted).
struct KernelIntegral {
    double value = 0.0;
    bool degenerate = false;
    int nodes_used = 0;
};

/// ∫ kernel(S′; s_ref, vol, kernel_horizon) · expected_payoff_bsm(S′, spec, vol, payoff_horizon) dS′
/// in log coordinates x = ln(S′/s_ref), with Gauss-Legendre doubling until
/// two successive estimates agree to quad.rel_tolerance.
KernelIntegral kernel_integral(double s_ref, double vol, double kernel_horizon, double payoff_horizon,
                               const OptionSpec& spec, const QuadratureConfig& quad);

/// Discounted MTDD call price and its Black-equivalent volatility.
MtddQuote mtdd_call(const MarketParams& params, const OptionSpec& spec, const QuadratureConfig& quad = {});

/// Put counterpart; in strike mode the integral runs over S′ < K.
MtddQuote mtdd_put(const MarketParams& params, const OptionSpec& spec, const QuadratureConfig& quad = {});

/// Dispatches on spec.kind.
MtddQuote mtdd_price(const MarketParams& params, const OptionSpec& spec, const QuadratureConfig& quad = {});

/// Adjusted-to-maturity value V^T(s_now) after mirror time `elapsed_to_maturity`.
/// `s_now` is a forward (maturity-adjusted) price. At elapsed = T and
/// s_now = F this equals mtdd_price·e^{rT}.
double mtdd_profile(double s_now, double elapsed_to_maturity, const MarketParams& params,
                    const OptionSpec& spec, const QuadratureConfig& quad = {});

}  // namespace mtdd
