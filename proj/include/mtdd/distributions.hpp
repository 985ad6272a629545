// SPDX-License-Identifier: MIT
#pragma once

#include <Eigen/Core>

#include <cmath>
#include <concepts>
#include <numbers>

#include "mtdd/errors.hpp"

namespace mtdd {

/// Standard normal density φ(x) = exp(-x²/2) / √(2π).
template <std::floating_point Scalar>
Scalar norm_pdf(Scalar x) {
    constexpr Scalar inv_sqrt_2pi =
        std::numbers::inv_sqrtpi_v<Scalar> / std::numbers::sqrt2_v<Scalar>;
    return inv_sqrt_2pi * std::exp(-x * x / 2);
}

/// Standard normal CDF through erfc, which keeps full relative accuracy in the lower tail.
template <std::floating_point Scalar>
Scalar norm_cdf(Scalar x) {
    return std::erfc(-x / std::numbers::sqrt2_v<Scalar>) / 2;
}

/// Coefficient-wise Φ over an Eigen array expression.
template <typename Derived>
auto norm_cdf(const Eigen::ArrayBase<Derived>& x) {
    using Scalar = typename Derived::Scalar;
    return x.unaryExpr([](Scalar v) { return norm_cdf(v); });
}

template <typename Derived>
auto norm_pdf(const Eigen::ArrayBase<Derived>& x) {
    using Scalar = typename Derived::Scalar;
    return x.unaryExpr([](Scalar v) { return norm_pdf(v); });
}

/// Inverse of Φ on (0, 1).
///
/// Acklam's rational approximation (relative error ~1e-9) followed by one
/// Halley step against the erfc-based CDF, which brings the result to
/// near machine precision.
template <std::floating_point Scalar>
Scalar norm_quantile(Scalar p) {
    if (!(p > 0 && p < 1)) throw invalid_input("norm_quantile: probability must lie in (0, 1)");

    constexpr Scalar a[] = {-3.969683028665376e+01, 2.209460984245205e+02, -2.759285104469687e+02,
                            1.383577518672690e+02,  -3.066479806614716e+01, 2.506628277459239e+00};
    constexpr Scalar b[] = {-5.447609879822406e+01, 1.615858368580409e+02, -1.556989798598866e+02,
                            6.680131188771972e+01,  -1.328068155288572e+01};
    constexpr Scalar c[] = {-7.784894002430293e-03, -3.223964580411365e-01, -2.400758277161838e+00,
                            -2.549732539343734e+00, 4.374664141464968e+00,  2.938163982698783e+00};
    constexpr Scalar d[] = {7.784695709041462e-03, 3.224671290700398e-01, 2.445134137142996e+00,
                            3.754408661907416e+00};
    constexpr Scalar p_low = 0.02425;

    Scalar x;
    if (p < p_low) {
        const Scalar q = std::sqrt(-2 * std::log(p));
        x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1);
    } else if (p <= 1 - p_low) {
        const Scalar q = p - Scalar(0.5);
        const Scalar r = q * q;
        x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
            (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1);
    } else {
        const Scalar q = std::sqrt(-2 * std::log1p(-p));
        x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1);
    }

    // Halley refinement; the residual is taken on the tail nearer to p.
    const Scalar e = x < 0 ? norm_cdf(x) - p : (1 - p) - norm_cdf(-x);
    const Scalar u = e / norm_pdf(x);
    return x - u / (1 + x * u / 2);
}

/// Lognormal law of an asset value whose mean is `forward` and whose log has
/// standard deviation `total_stddev` (σ√|t|).
template <std::floating_point Scalar>
class BasicLogNormalLaw {
public:
    BasicLogNormalLaw(Scalar forward, Scalar total_stddev)
        : forward_(forward), total_stddev_(total_stddev) {
        if (!(forward > 0)) throw invalid_input("LogNormalLaw: forward must be positive");
        if (!(total_stddev >= 0)) throw invalid_input("LogNormalLaw: total_stddev must be non-negative");
    }

    Scalar forward() const noexcept { return forward_; }
    Scalar total_stddev() const noexcept { return total_stddev_; }

private:
    Scalar forward_;
    Scalar total_stddev_;
};

using LogNormalLaw = BasicLogNormalLaw<double>;

/// Q-measure density of the value at maturity:
/// f(s) = exp(-(ln(s/F) + v²/2)² / (2v²)) / (s v √(2π)).
template <std::floating_point Scalar>
Scalar lognormal_density_q(Scalar s, const BasicLogNormalLaw<Scalar>& law) {
    if (!(s > 0)) throw invalid_input("lognormal_density_q: s must be positive");
    const Scalar v = law.total_stddev();
    if (v == 0) throw degenerate_law("lognormal_density_q: zero total variance");
    const Scalar z = (std::log(s / law.forward()) + v * v / 2) / v;
    return norm_pdf(z) / (s * v);
}

}  // namespace mtdd
