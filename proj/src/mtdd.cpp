// SPDX-License-Identifier: MIT
#include "mtdd/mtdd.hpp"

#include <cmath>
#include <limits>

#include "mtdd/distributions.hpp"
#include "mtdd/quadrature.hpp"

namespace mtdd {

void QuadratureConfig::validate() const {
    if (nodes < 16) throw invalid_input("quadrature: nodes must be at least 16");
    if (!(truncation_halfwidth >= 4.0)) throw invalid_input("quadrature: truncation_halfwidth must be at least 4");
    if (!(rel_tolerance > 0.0)) throw invalid_input("quadrature: rel_tolerance must be positive");
    if (max_nodes < nodes) throw invalid_input("quadrature: max_nodes below nodes");
}

double mtdd_kernel(double s_dummy, double s_ref, double vol, double horizon) {
    if (!(s_dummy > 0 && s_ref > 0 && vol > 0 && horizon > 0)) {
        if (s_dummy > 0 && s_ref > 0 && vol >= 0 && horizon >= 0) {
            throw degenerate_law("mtdd_kernel: zero kernel variance");
        }
        throw invalid_input("mtdd_kernel: arguments must be positive");
    }
    return lognormal_density_q(s_dummy, LogNormalLaw(s_ref, vol * std::sqrt(horizon)));
}

KernelIntegral kernel_integral(double s_ref, double vol, double kernel_horizon, double payoff_horizon,
                               const OptionSpec& spec, const QuadratureConfig& quad) {
    quad.validate();
    spec.validate();
    if (!(s_ref > 0)) throw invalid_input("kernel_integral: reference price must be positive");

    const double w = vol * std::sqrt(kernel_horizon);
    if (!(w > 0)) throw degenerate_law("kernel_integral: zero kernel variance");

    // x = ln(S′/s_ref) is Gaussian with mean −w²/2 and sd w. The payoff grows
    // like e^x, which tilts the effective mass up by w², so the upper edge is
    // pushed out by that amount.
    const double mean = -0.5 * w * w;
    double lo = mean - quad.truncation_halfwidth * w;
    double hi = mean + quad.truncation_halfwidth * w + w * w;

    if (quad.lower_bound_mode == LowerBoundMode::strike) {
        const double x_strike = std::log(spec.strike / s_ref);
        if (spec.kind == OptionKind::call) {
            if (x_strike >= hi) return {0.0, true, 0};
            lo = std::max(lo, x_strike);
        } else {
            if (x_strike <= lo) return {0.0, true, 0};
            hi = std::min(hi, x_strike);
        }
    }

    auto integrand = [&](const Eigen::ArrayXd& x) -> Eigen::ArrayXd {
        const Eigen::ArrayXd kernel = norm_pdf(((x - mean) / w).eval()) / w;
        const Eigen::ArrayXd payoff = x.unaryExpr([&](double xi) {
            return expected_payoff_bsm(s_ref * std::exp(xi), spec.strike, spec.kind, vol, payoff_horizon);
        });
        return kernel * payoff;
    };

    int n = quad.nodes;
    double coarse = integrate(*gauss_legendre(n), lo, hi, integrand);
    while (2 * n <= quad.max_nodes) {
        const double fine = integrate(*gauss_legendre(2 * n), lo, hi, integrand);
        if (std::abs(fine - coarse) <= quad.rel_tolerance * std::abs(fine) + std::numeric_limits<double>::min()) {
            return {fine, false, 2 * n};
        }
        coarse = fine;
        n *= 2;
    }
    throw convergence_error("kernel_integral: node budget exhausted before reaching tolerance");
}

namespace {

MtddQuote quote(const MarketParams& params, const OptionSpec& spec, const QuadratureConfig& quad) {
    params.validate();
    const KernelIntegral integral =
        kernel_integral(forward_price(params), params.vol, params.maturity, params.maturity, spec, quad);

    MtddQuote q;
    q.price = params.discount() * integral.value;
    q.degenerate = integral.degenerate;
    q.nodes_used = integral.nodes_used;
    try {
        q.equiv_implied_vol = implied_vol(q.price, params.market(), spec);
    } catch (const price_out_of_bounds&) {
        q.equiv_implied_vol.reset();
    }
    return q;
}

}  // namespace

MtddQuote mtdd_call(const MarketParams& params, const OptionSpec& spec, const QuadratureConfig& quad) {
    if (spec.kind != OptionKind::call) throw invalid_input("mtdd_call: spec is not a call");
    return quote(params, spec, quad);
}

MtddQuote mtdd_put(const MarketParams& params, const OptionSpec& spec, const QuadratureConfig& quad) {
    if (spec.kind != OptionKind::put) throw invalid_input("mtdd_put: spec is not a put");
    return quote(params, spec, quad);
}

MtddQuote mtdd_price(const MarketParams& params, const OptionSpec& spec, const QuadratureConfig& quad) {
    return spec.kind == OptionKind::call ? mtdd_call(params, spec, quad) : mtdd_put(params, spec, quad);
}

double mtdd_profile(double s_now, double elapsed_to_maturity, const MarketParams& params,
                    const OptionSpec& spec, const QuadratureConfig& quad) {
    params.validate();
    if (!(elapsed_to_maturity > 0.0) || elapsed_to_maturity > params.maturity * (1.0 + 1e-12)) {
        throw invalid_input("mtdd_profile: elapsed time must lie in (0, T]");
    }
    return kernel_integral(s_now, params.vol, elapsed_to_maturity, params.maturity, spec, quad).value;
}

}  // namespace mtdd
