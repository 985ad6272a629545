// SPDX-License-Identifier: MIT
#pragma once

#include <Eigen/Core>

#include <chrono>
#include <cmath>
#include <concepts>
#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "mtdd/errors.hpp"

namespace mtdd {

// ---------------------------------------------------------------------------
// Coordinate transforms
// ---------------------------------------------------------------------------

/// Exponent 1 − 2μ/σ² shared by the ξ-transform and its diffusion coefficient.
template <std::floating_point Scalar>
Scalar xi_exponent(Scalar mu, Scalar sigma) {
    return 1 - 2 * mu / (sigma * sigma);
}

/// ξ = (S/S₀)^{1−2μ/σ²}; a martingale coordinate free of explicit time.
template <std::floating_point Scalar>
Scalar xi_transform(Scalar s, Scalar s0, Scalar mu, Scalar sigma) {
    return std::pow(s / s0, xi_exponent(mu, sigma));
}

/// D = (σ²/2)(1 − 2μ/σ²)²(S/S₀)^{2(1−2μ/σ²)}, the local diffusion of ξ.
template <std::floating_point Scalar>
Scalar diffusion_coeff(Scalar s, Scalar s0, Scalar mu, Scalar sigma) {
    const Scalar a = xi_exponent(mu, sigma);
    return sigma * sigma / 2 * a * a * std::pow(s / s0, 2 * a);
}

/// ζ^Q = ln(S′/S^T) + (μ − σ²/2)|t′|.
template <std::floating_point Scalar>
Scalar zeta_q_transform(Scalar s_dummy, Scalar s_ref_forward, Scalar mu, Scalar sigma, Scalar mirror_time) {
    return std::log(s_dummy / s_ref_forward) + (mu - sigma * sigma / 2) * mirror_time;
}

// ---------------------------------------------------------------------------
// Series
// ---------------------------------------------------------------------------

using Date = std::chrono::sys_days;

struct PriceSeries {
    std::vector<Date> dates;
    Eigen::VectorXd closes;

    Eigen::Index size() const noexcept { return closes.size(); }
    /// Strictly ascending dates, equal lengths, ≥ 2 points, positive closes.
    void validate() const;
};

struct VolEstimate {
    std::size_t end_index = 0;  ///< last price of the trailing window
    int window_days = 0;
    int annualization = 252;
    double sigma = 0.0;
};

/// Rolling annualized sample standard deviation (divisor n − 1) of daily log
/// returns. One estimate per index with a full trailing window of
/// `window_days` returns; the first has end_index == window_days.
std::vector<VolEstimate> historical_vol(const PriceSeries& series, int window_days, int annualization = 252);

/// Volatility used to normalize the step S_i → S_{i+1}: a fixed model vol,
/// or the rolling estimate whose window ends at S_i.
class VolSource {
public:
    static VolSource fixed(double sigma);
    static VolSource rolling(std::vector<VolEstimate> estimates);

    std::optional<double> sigma_for_step(std::size_t step) const;
    /// Reference price index S₀ for the step: the window start for rolling
    /// sources, `fallback` for a fixed vol.
    std::size_t reference_index(std::size_t step, std::size_t fallback) const;

private:
    std::optional<double> fixed_;
    std::vector<VolEstimate> rolling_;
};

enum class NormalizationScheme { xi_theoretical, xi_window, log_window };

std::string_view to_string(NormalizationScheme scheme);
NormalizationScheme parse_scheme(std::string_view name);

struct NormalizationOptions {
    double dt = 1.0 / 252.0;
    std::size_t first_step = 0;
    bool xi_sqrt2 = true;    ///< ξ-returns over √(2DΔt); false gives √(DΔt)
    bool log_sqrt2 = false;  ///< log-returns over σ√(2Δt); default σ√Δt
    double degeneracy_threshold = 1e-6;
};

struct NormalizedReturnSeries {
    Eigen::VectorXd values;
    std::vector<std::size_t> steps;  ///< step index i of each value (S_i → S_{i+1})
    NormalizationScheme scheme = NormalizationScheme::xi_theoretical;
    std::size_t fallback_steps = 0;  ///< |1 − 2μ/σ²| below threshold, log formula used
    std::size_t zero_vol_steps = 0;  ///< σ = 0, step dropped

    Eigen::Index size() const noexcept { return values.size(); }
};

/// Normalized returns for steps first_step .. n−2.
///   xi_*:       (ξ_{i+1} − ξ_i)/√(2·D_i·Δt), ξ and D at the step's reference S₀, D at S_i
///   log_window: (ln S_{i+1} − ln S_i)/(σ_i√Δt)
/// Throws data_error when the source has no volatility for a step.
NormalizedReturnSeries normalized_returns(const PriceSeries& series, NormalizationScheme scheme, double drift,
                                          const VolSource& vol_source, const NormalizationOptions& options = {});

struct Histogram {
    Eigen::VectorXd edges;  ///< bins + 1 ascending edges
    Eigen::VectorXi counts;
};

struct DistributionStats {
    std::size_t samples = 0;
    double mean = 0.0;
    double stddev = 0.0;
    double skewness = 0.0;
    double excess_kurtosis = 0.0;
    double tail_mass_2 = 0.0;  ///< fraction with |x| > 2
    double tail_mass_3 = 0.0;
    Histogram histogram;
    bool degenerate = false;   ///< zero spread; shape moments reported as 0
};

inline constexpr std::size_t kMinStatsSamples = 30;

/// Sample moments (g₁, g₂ from biased central moments; stddev with n − 1),
/// tail masses, and an equal-width histogram over [−5, 5] with clamping.
DistributionStats distribution_stats(const Eigen::Ref<const Eigen::VectorXd>& values, int bins = 50);

inline DistributionStats distribution_stats(const NormalizedReturnSeries& returns, int bins = 50) {
    return distribution_stats(returns.values, bins);
}

}  // namespace mtdd
