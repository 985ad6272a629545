// SPDX-License-Identifier: MIT
#pragma once

#include <Eigen/Core>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>

#include "mtdd/black.hpp"
#include "mtdd/mtdd.hpp"

namespace mtdd {

/// Standard normals from mt19937_64 through the inverse CDF. The engine's
/// output sequence and the conversion are both fixed by the standard, so a
/// seed reproduces the same draws on every platform.
class NormalStream {
public:
    explicit NormalStream(std::uint64_t seed);

    double uniform();  ///< in the open interval (0, 1)
    double operator()();

private:
    std::mt19937_64 engine_;
};

/// Seed of batch `index` derived from a root seed (splitmix64 finalizer).
std::uint64_t derive_seed(std::uint64_t root, std::uint64_t index);

struct McConfig {
    std::size_t paths = 1'000'000;
    std::uint64_t seed = 20080225;
    bool antithetic = false;

    void validate() const;
};

struct FdGrid {
    double zeta_halfwidth = 8.0;  ///< kernel standard deviations σ√T
    int space_steps = 800;
    int time_steps = 800;

    void validate() const;
};

struct PathSeries {
    Eigen::VectorXd times;
    Eigen::VectorXd values;
};

/// Exact log-Euler GBM: S_{i+1} = S_i·exp((μ − σ²/2)Δt + σ√Δt·Z_i).
PathSeries gbm_simulate(double s0, double mu, double sigma, double horizon, int steps, std::uint64_t seed);

struct McEstimate {
    double price = 0.0;
    double std_error = 0.0;
    std::size_t samples = 0;  ///< independent samples behind std_error (pairs when antithetic)
};

/// Monte Carlo of the kernel integral: S′ ~ lognormal(F, σ²T), payoff
/// e^{−rT}·expected_payoff_bsm(S′). In strike mode draws outside the
/// integration range (S′ ≤ K for calls, S′ ≥ K for puts) contribute zero.
McEstimate mc_mtdd_price(const MarketParams& params, const OptionSpec& spec, LowerBoundMode mode,
                         const McConfig& mc);

/// Finite-difference value profile on the heat-coordinate grid.
struct FdProfile {
    Eigen::VectorXd zeta;           ///< heat coordinate ln(S/F) − σ²|t′|/2 at the final mirror time
    Eigen::VectorXd dummy_forward;  ///< S′ = F·exp(ζ + σ²|t′|/2) for each node
    Eigen::VectorXd value;          ///< V^T, undiscounted
    double mirror_time = 0.0;
    double mesh_ratio = 0.0;        ///< D·Δ|t′| / Δζ²

    /// Linear interpolation in ζ at the node for forward price `s`.
    double value_at(double s) const;
};

/// Crank-Nicolson march of the unit heat equation ∂V/∂(D|t′|) = ∂²V/∂ζ²
/// from V(ζ, 0) = expected_payoff_bsm(S′(ζ)) to |t′| = mirror_time
/// (default: T). Dirichlet far-field boundaries take the payoff asymptotes.
///
/// Requires q = 0. Throws convergence_error when the nodes adjacent to a
/// boundary end up more than 1e-6·F away from the asymptote, which means the
/// domain is too narrow for the pinned values to hold.
FdProfile fd_discount_solve(const MarketParams& params, const OptionSpec& spec, const FdGrid& grid,
                            std::optional<double> mirror_time = std::nullopt);

}  // namespace mtdd
