// SPDX-License-Identifier: MIT
#include "mtdd/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mtdd/distributions.hpp"

namespace mtdd {

NormalStream::NormalStream(std::uint64_t seed) : engine_(seed) {}

double NormalStream::uniform() {
    // 53 random bits, offset by half an ulp so 0 and 1 are unreachable.
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
}

double NormalStream::operator()() { return norm_quantile(uniform()); }

std::uint64_t derive_seed(std::uint64_t root, std::uint64_t index) {
    std::uint64_t z = root + 0x9e3779b97f4a7c15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

void McConfig::validate() const {
    if (paths < 1) throw invalid_input("mc: paths must be at least 1");
}

void FdGrid::validate() const {
    if (space_steps < 50) throw invalid_input("fd grid: space_steps must be at least 50");
    if (time_steps < 50) throw invalid_input("fd grid: time_steps must be at least 50");
    if (!(zeta_halfwidth >= 5.0)) throw invalid_input("fd grid: zeta_halfwidth must be at least 5");
}

PathSeries gbm_simulate(double s0, double mu, double sigma, double horizon, int steps, std::uint64_t seed) {
    if (!(s0 > 0)) throw invalid_input("gbm_simulate: s0 must be positive");
    if (!(sigma >= 0)) throw invalid_input("gbm_simulate: sigma must be non-negative");
    if (!(horizon > 0)) throw invalid_input("gbm_simulate: horizon must be positive");
    if (steps < 1) throw invalid_input("gbm_simulate: steps must be at least 1");

    const double dt = horizon / steps;
    const double drift = (mu - 0.5 * sigma * sigma) * dt;
    const double diffusion = sigma * std::sqrt(dt);

    PathSeries path{Eigen::VectorXd(steps + 1), Eigen::VectorXd(steps + 1)};
    NormalStream normal(seed);
    double log_s = std::log(s0);
    path.times(0) = 0.0;
    path.values(0) = s0;
    for (int i = 1; i <= steps; ++i) {
        const double z = sigma > 0 ? normal() : 0.0;
        log_s += drift + diffusion * z;
        path.times(i) = i * dt;
        // Recompute from the time grid when σ = 0 so the deterministic limit is exact.
        path.values(i) = sigma > 0 ? std::exp(log_s) : s0 * std::exp(mu * path.times(i));
    }
    return path;
}

McEstimate mc_mtdd_price(const MarketParams& params, const OptionSpec& spec, LowerBoundMode mode,
                         const McConfig& mc) {
    params.validate();
    spec.validate();
    mc.validate();

    const double forward = forward_price(params);
    const double df = params.discount();
    const double w = params.vol * std::sqrt(params.maturity);
    const bool truncate = mode == LowerBoundMode::strike;
    const bool call = spec.kind == OptionKind::call;

    auto sample = [&](double z) {
        const double s_dummy = forward * std::exp(-0.5 * w * w + w * z);
        if (truncate && (call ? !(s_dummy > spec.strike) : !(s_dummy < spec.strike))) return 0.0;
        return df * expected_payoff_bsm(s_dummy, spec, params.vol, params.maturity);
    };

    NormalStream normal(mc.seed);
    const std::size_t samples = mc.antithetic ? (mc.paths + 1) / 2 : mc.paths;
    // Welford accumulation keeps the variance accurate at 1e7 samples.
    double mean = 0.0;
    double m2 = 0.0;
    for (std::size_t i = 0; i < samples; ++i) {
        const double z = normal();
        const double y = mc.antithetic ? 0.5 * (sample(z) + sample(-z)) : sample(z);
        const double delta = y - mean;
        mean += delta / static_cast<double>(i + 1);
        m2 += delta * (y - mean);
    }
    const double variance = samples > 1 ? m2 / static_cast<double>(samples - 1) : 0.0;
    return {mean, std::sqrt(variance / static_cast<double>(samples)), samples};
}

double FdProfile::value_at(double s) const {
    if (!(s > 0)) throw invalid_input("FdProfile::value_at: price must be positive");
    const double z = std::log(s / dummy_forward(0)) + zeta(0);
    const Eigen::Index n = zeta.size();
    if (z < zeta(0) || z > zeta(n - 1)) throw invalid_input("FdProfile::value_at: price outside the grid");
    const double dz = zeta(1) - zeta(0);
    const auto i = std::min<Eigen::Index>(static_cast<Eigen::Index>((z - zeta(0)) / dz), n - 2);
    const double t = (z - zeta(i)) / dz;
    return (1.0 - t) * value(i) + t * value(i + 1);
}

FdProfile fd_discount_solve(const MarketParams& params, const OptionSpec& spec, const FdGrid& grid,
                            std::optional<double> mirror_time) {
    params.validate();
    spec.validate();
    grid.validate();
    if (params.dividend != 0.0) throw invalid_input("fd_discount_solve: requires zero dividend yield");

    const double horizon = mirror_time.value_or(params.maturity);
    if (!(horizon > 0.0)) throw invalid_input("fd_discount_solve: mirror time must be positive");

    const double forward = forward_price(params);
    const double sigma = params.vol;
    const double theta_end = 0.5 * sigma * sigma * horizon;  // D|t′| with D = σ²/2
    const int nx = grid.space_steps;
    const int nt = grid.time_steps;

    // Centre the grid on the node that maps back to S′ = F at the end of the march.
    const double centre = -theta_end;
    const double halfwidth = grid.zeta_halfwidth * sigma * std::sqrt(params.maturity);
    const Eigen::VectorXd zeta = Eigen::VectorXd::LinSpaced(nx + 1, centre - halfwidth, centre + halfwidth);
    const double dz = zeta(1) - zeta(0);
    const double dtheta = theta_end / nt;
    const double lambda = dtheta / (dz * dz);

    const bool call = spec.kind == OptionKind::call;
    const double strike = spec.strike;
    auto lower_edge = [&](double theta) {
        return call ? 0.0 : strike - forward * std::exp(zeta(0) + theta);
    };
    auto upper_edge = [&](double theta) {
        return call ? forward * std::exp(zeta(nx) + theta) - strike : 0.0;
    };

    Eigen::VectorXd v = zeta.unaryExpr([&](double z) {
        return expected_payoff_bsm(forward * std::exp(z), spec, sigma, params.maturity);
    });
    v(0) = lower_edge(0.0);
    v(nx) = upper_edge(0.0);

    // (I − λ/2·L) V^{n+1} = (I + λ/2·L) V^n on the interior. The tridiagonal
    // matrix is constant, so its Thomas factorization is computed once.
    const int m = nx - 1;
    const double off = -0.5 * lambda;
    const double diag = 1.0 + lambda;
    Eigen::VectorXd c_prime(m);
    Eigen::VectorXd denom(m);
    denom(0) = diag;
    c_prime(0) = off / diag;
    for (int i = 1; i < m; ++i) {
        denom(i) = diag - off * c_prime(i - 1);
        c_prime(i) = off / denom(i);
    }

    Eigen::VectorXd rhs(m);
    for (int step = 1; step <= nt; ++step) {
        const double theta_new = step * dtheta;
        const double lo_new = lower_edge(theta_new);
        const double hi_new = upper_edge(theta_new);

        rhs = (1.0 - lambda) * v.segment(1, m) + 0.5 * lambda * (v.segment(0, m) + v.segment(2, m));
        rhs(0) += 0.5 * lambda * lo_new;
        rhs(m - 1) += 0.5 * lambda * hi_new;

        // Forward sweep then back substitution.
        rhs(0) /= denom(0);
        for (int i = 1; i < m; ++i) rhs(i) = (rhs(i) - off * rhs(i - 1)) / denom(i);
        for (int i = m - 2; i >= 0; --i) rhs(i) -= c_prime(i) * rhs(i + 1);

        v.segment(1, m) = rhs;
        v(0) = lo_new;
        v(nx) = hi_new;
    }

    // Asymptote check on the first interior nodes.
    const double tol = 1e-6 * forward;
    const double asym_lo = call ? 0.0 : strike - forward * std::exp(zeta(1) + theta_end);
    const double asym_hi = call ? forward * std::exp(zeta(nx - 1) + theta_end) - strike : 0.0;
    if (std::abs(v(1) - asym_lo) > tol || std::abs(v(nx - 1) - asym_hi) > tol) {
        throw convergence_error("fd_discount_solve: grid too coarse, boundary asymptotes violated by " +
                                std::to_string(std::max(std::abs(v(1) - asym_lo), std::abs(v(nx - 1) - asym_hi))));
    }

    FdProfile profile;
    profile.zeta = zeta;
    profile.dummy_forward = (forward * (zeta.array() + theta_end).exp()).matrix();
    profile.value = v;
    profile.mirror_time = horizon;
    profile.mesh_ratio = lambda;
    return profile;
}

}  // namespace mtdd
