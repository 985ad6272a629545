// SPDX-License-Identifier: MIT
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mtdd/black.hpp"
#include "mtdd/csv.hpp"
#include "mtdd/mtdd.hpp"
#include "mtdd/oracles.hpp"
#include "mtdd/returns.hpp"
#include "mtdd/table.hpp"

namespace mtdd {

std::string_view to_string(LowerBoundMode mode);
LowerBoundMode parse_mode(std::string_view name);
std::string_view to_string(OptionKind kind);
OptionKind parse_kind(std::string_view name);

// ---------------------------------------------------------------------------
// price / profile
// ---------------------------------------------------------------------------

struct PriceReport {
    MarketParams params;
    OptionSpec spec;
    LowerBoundMode mode = LowerBoundMode::strike;
    double forward = 0.0;
    double moneyness = 0.0;
    double black = 0.0;
    MtddQuote quote;

    Table table() const;
};

PriceReport price_report(const MarketParams& params, const OptionSpec& spec, const QuadratureConfig& quad);

/// V^T at each forward level in `s_now` after mirror time `elapsed`.
Table profile_table(const MarketParams& params, const OptionSpec& spec, const QuadratureConfig& quad,
                    const std::vector<double>& s_now, double elapsed);

// ---------------------------------------------------------------------------
// analyze-returns
// ---------------------------------------------------------------------------

struct AnalyzeConfig {
    double drift = 0.0;
    int window = 30;          ///< rolling window for xi_window / log_window
    int theory_window = 90;   ///< rolling window for xi_theoretical when no model vol is given
    std::optional<double> model_vol;
    int annualization = 252;
    int bins = 50;
    std::vector<NormalizationScheme> schemes{NormalizationScheme::xi_theoretical, NormalizationScheme::xi_window,
                                             NormalizationScheme::log_window};
    bool xi_sqrt2 = true;
    bool log_sqrt2 = false;
};

struct SchemeResult {
    NormalizationScheme scheme;
    NormalizedReturnSeries returns;
    std::optional<DistributionStats> stats;  ///< absent when too few usable steps
    std::string flag;                        ///< ok, degenerate, zero_vol, too_few_samples
};

struct ReturnsAnalysis {
    std::vector<SchemeResult> results;
    int bins = 50;

    Table stats_table() const;
    /// bin_lo, bin_hi, normal, then one density column per scheme.
    Table histogram_table() const;
};

ReturnsAnalysis analyze_returns(const PriceData& data, const AnalyzeConfig& config);

// ---------------------------------------------------------------------------
// bias-study
// ---------------------------------------------------------------------------

struct BiasConfig {
    int window = 90;
    int annualization = 252;
    int maturity_days = 30;
    double day_count = 365.0;
    double rate = 0.0;
    QuadratureConfig quad;
};

struct BiasRow {
    Date date;
    double sig_hist = 0.0;
    std::optional<double> sig_model;
    double sig_data = 0.0;
};

struct BiasReport {
    std::vector<BiasRow> rows;
    std::size_t skipped_history = 0;     ///< dates without a full window
    std::size_t skipped_degenerate = 0;  ///< zero historical vol or no model vol
    double bias_hist = 0.0;              ///< mean of (data − est)/data
    double bias_model = 0.0;
    double mae_hist = 0.0;               ///< mean of |data − est|/data
    double mae_model = 0.0;

    Table summary_table() const;
    Table series_table() const;
};

/// Self-calibrated MTDD against quoted implied vols: historical vol → ATM
/// MTDD price → equivalent Black vol, compared with the data column.
BiasReport bias_study(const PriceData& data, const BiasConfig& config);

/// SigI_Model for an ATM-forward call priced from `hist_vol`; the quantity
/// bias_study compares against the data.
std::optional<double> atm_model_vol(double spot, double hist_vol, const BiasConfig& config);

// ---------------------------------------------------------------------------
// cap-skew
// ---------------------------------------------------------------------------

struct ExperimentConfig {
    LowerBoundMode mode = LowerBoundMode::strike;
    std::vector<double> maturities;
    std::vector<double> moneyness_grid;
    std::vector<double> vol_inputs;
    std::uint64_t seed = 20080225;
    std::string output_path;
    double forward = 0.05;  ///< scalar forward rate of each caplet
    double rate = 0.0;      ///< flat discount rate
    QuadratureConfig quad;
    std::size_t mc_paths = 0;  ///< > 0 adds Monte Carlo columns per cell

    void validate() const;
};

/// Caplets as calls on a scalar forward F with K = F(1 − k), priced by the
/// MTDD kernel at σ = SigI_Forw and expressed as a Black vol.
Table cap_skew(const ExperimentConfig& config);

// ---------------------------------------------------------------------------
// validate
// ---------------------------------------------------------------------------

struct ValidateConfig {
    std::uint64_t seed = 20080225;
    std::size_t mc_paths = 1'000'000;
    FdGrid grid;
    QuadratureConfig quad;
};

struct ValidationReport {
    Table table{{"check", "value", "reference", "error", "tolerance", "status"}};
    bool all_passed = true;
};

/// Oracle cross-checks: closed-form identity, parity, Monte Carlo, PDE, limits.
ValidationReport validate_oracles(const ValidateConfig& config);

}  // namespace mtdd
