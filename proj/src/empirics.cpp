// SPDX-License-Identifier: MIT
#include "mtdd/empirics.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <string>

#include "mtdd/distributions.hpp"

namespace mtdd {

std::string_view to_string(LowerBoundMode mode) {
    return mode == LowerBoundMode::strike ? "strike" : "zero";
}

LowerBoundMode parse_mode(std::string_view name) {
    if (name == "strike") return LowerBoundMode::strike;
    if (name == "zero") return LowerBoundMode::zero;
    throw invalid_input("unknown mode '" + std::string(name) + "' (expected strike or zero)");
}

std::string_view to_string(OptionKind kind) { return kind == OptionKind::call ? "call" : "put"; }

OptionKind parse_kind(std::string_view name) {
    if (name == "call") return OptionKind::call;
    if (name == "put") return OptionKind::put;
    throw invalid_input("unknown option kind '" + std::string(name) + "' (expected call or put)");
}

// ---------------------------------------------------------------------------

PriceReport price_report(const MarketParams& params, const OptionSpec& spec, const QuadratureConfig& quad) {
    params.validate();
    spec.validate();
    PriceReport r;
    r.params = params;
    r.spec = spec;
    r.mode = quad.lower_bound_mode;
    r.forward = forward_price(params);
    r.moneyness = relative_moneyness(r.forward, spec.strike);
    r.black = black_price(params, spec);
    r.quote = mtdd_price(params, spec, quad);
    return r;
}

Table PriceReport::table() const {
    Table t({"mode", "kind", "spot", "strike", "rate", "dividend", "vol", "maturity", "forward", "moneyness",
             "mtdd_price", "equiv_implied_vol", "black_price", "degenerate"});
    t.add_row({std::string(to_string(mode)), std::string(to_string(spec.kind)), format_number(params.spot),
               format_number(spec.strike), format_number(params.rate), format_number(params.dividend),
               format_number(params.vol), format_number(params.maturity), format_number(forward),
               format_number(moneyness), format_number(quote.price), format_number(quote.equiv_implied_vol),
               format_number(black), quote.degenerate ? "1" : "0"});
    return t;
}

Table profile_table(const MarketParams& params, const OptionSpec& spec, const QuadratureConfig& quad,
                    const std::vector<double>& s_now, double elapsed) {
    Table t({"s_now", "elapsed", "value", "expected_payoff_bsm"});
    for (double s : s_now) {
        if (!(s > 0)) throw invalid_input("profile: s_now must be positive");
        t.add_row({format_number(s), format_number(elapsed),
                   format_number(mtdd_profile(s, elapsed, params, spec, quad)),
                   format_number(expected_payoff_bsm(s, spec, params.vol, params.maturity))});
    }
    return t;
}

// ---------------------------------------------------------------------------

ReturnsAnalysis analyze_returns(const PriceData& data, const AnalyzeConfig& config) {
    const PriceSeries& series = data.series;
    series.validate();
    if (config.schemes.empty()) throw invalid_input("analyze-returns: no schemes requested");

    ReturnsAnalysis out;
    out.bins = config.bins;
    for (const auto scheme : config.schemes) {
        NormalizationOptions opt;
        opt.dt = 1.0 / config.annualization;
        opt.xi_sqrt2 = config.xi_sqrt2;
        opt.log_sqrt2 = config.log_sqrt2;

        VolSource source = VolSource::fixed(0.0);
        if (scheme == NormalizationScheme::xi_theoretical && config.model_vol) {
            source = VolSource::fixed(*config.model_vol);
            opt.first_step = 0;
        } else {
            const int window = scheme == NormalizationScheme::xi_theoretical ? config.theory_window : config.window;
            source = VolSource::rolling(historical_vol(series, window, config.annualization));
            opt.first_step = static_cast<std::size_t>(window);
        }

        SchemeResult r{scheme, normalized_returns(series, scheme, config.drift, source, opt), std::nullopt, ""};
        if (static_cast<std::size_t>(r.returns.size()) < kMinStatsSamples) {
            r.flag = r.returns.zero_vol_steps > 0 ? "zero_vol" : "too_few_samples";
        } else {
            r.stats = distribution_stats(r.returns, config.bins);
            r.flag = r.stats->degenerate ? "degenerate" : "ok";
        }
        out.results.push_back(std::move(r));
    }
    return out;
}

Table ReturnsAnalysis::stats_table() const {
    Table t({"scheme", "samples", "mean", "stddev", "skewness", "excess_kurtosis", "tail_mass_2", "tail_mass_3",
             "zero_vol_steps", "fallback_steps", "flag"});
    for (const auto& r : results) {
        std::vector<std::string> row{std::string(to_string(r.scheme)), std::to_string(r.returns.size())};
        if (r.stats) {
            for (double v : {r.stats->mean, r.stats->stddev, r.stats->skewness, r.stats->excess_kurtosis,
                             r.stats->tail_mass_2, r.stats->tail_mass_3}) {
                row.push_back(format_number(v));
            }
        } else {
            row.insert(row.end(), 6, "");
        }
        row.push_back(std::to_string(r.returns.zero_vol_steps));
        row.push_back(std::to_string(r.returns.fallback_steps));
        row.push_back(r.flag);
        t.add_row(std::move(row));
    }
    t.add_row({"normal_reference", "", "0", "1", "0", "0", format_number(2.0 * norm_cdf(-2.0)),
               format_number(2.0 * norm_cdf(-3.0)), "0", "0", "reference"});
    return t;
}

Table ReturnsAnalysis::histogram_table() const {
    std::vector<std::string> header{"bin_lo", "bin_hi", "normal"};
    std::vector<const SchemeResult*> with_stats;
    for (const auto& r : results) {
        if (r.stats) {
            header.emplace_back(to_string(r.scheme));
            with_stats.push_back(&r);
        }
    }
    Table t(std::move(header));
    const Eigen::VectorXd edges = Eigen::VectorXd::LinSpaced(bins + 1, -5.0, 5.0);
    const double width = 10.0 / bins;
    for (int b = 0; b < bins; ++b) {
        std::vector<std::string> row{format_number(edges(b)), format_number(edges(b + 1)),
                                     format_number((norm_cdf(edges(b + 1)) - norm_cdf(edges(b))) / width)};
        for (const auto* r : with_stats) {
            row.push_back(format_number(r->stats->histogram.counts(b) /
                                        (static_cast<double>(r->stats->samples) * width)));
        }
        t.add_row(std::move(row));
    }
    return t;
}

// ---------------------------------------------------------------------------

std::optional<double> atm_model_vol(double spot, double hist_vol, const BiasConfig& config) {
    const MarketParams params{spot, config.rate, 0.0, hist_vol, config.maturity_days / config.day_count};
    const OptionSpec spec{forward_price(params), OptionKind::call};
    return mtdd_call(params, spec, config.quad).equiv_implied_vol;
}

BiasReport bias_study(const PriceData& data, const BiasConfig& config) {
    if (!data.implied_vol) throw data_error("bias-study: input has no implied_vol column");
    if (config.maturity_days < 1) throw invalid_input("bias-study: maturity_days must be positive");
    const PriceSeries& series = data.series;
    series.validate();
    const auto n = static_cast<std::size_t>(series.size());

    std::map<std::size_t, double> hist;
    if (n > static_cast<std::size_t>(config.window)) {
        for (const auto& e : historical_vol(series, config.window, config.annualization)) hist[e.end_index] = e.sigma;
    }

    BiasReport report;
    for (std::size_t i = 0; i < n; ++i) {
        const auto it = hist.find(i);
        if (it == hist.end()) {
            ++report.skipped_history;
            continue;
        }
        if (it->second == 0.0) {
            ++report.skipped_degenerate;
            continue;
        }
        const auto model = atm_model_vol(series.closes(static_cast<Eigen::Index>(i)), it->second, config);
        if (!model) {
            ++report.skipped_degenerate;
            continue;
        }
        report.rows.push_back({series.dates[i], it->second, model, (*data.implied_vol)(static_cast<Eigen::Index>(i))});
    }

    if (!report.rows.empty()) {
        for (const auto& r : report.rows) {
            const double eh = (r.sig_data - r.sig_hist) / r.sig_data;
            const double em = (r.sig_data - *r.sig_model) / r.sig_data;
            report.bias_hist += eh;
            report.bias_model += em;
            report.mae_hist += std::abs(eh);
            report.mae_model += std::abs(em);
        }
        const auto count = static_cast<double>(report.rows.size());
        report.bias_hist /= count;
        report.bias_model /= count;
        report.mae_hist /= count;
        report.mae_model /= count;
    }
    return report;
}

Table BiasReport::summary_table() const {
    Table t({"estimator", "dates", "bias", "mean_abs_rel_error", "skipped_history", "skipped_degenerate"});
    const bool any = !rows.empty();
    auto num = [&](double v) { return any ? format_number(v) : std::string{}; };
    t.add_row({"sig_hist", std::to_string(rows.size()), num(bias_hist), num(mae_hist),
               std::to_string(skipped_history), std::to_string(skipped_degenerate)});
    t.add_row({"sig_model", std::to_string(rows.size()), num(bias_model), num(mae_model),
               std::to_string(skipped_history), std::to_string(skipped_degenerate)});
    return t;
}

Table BiasReport::series_table() const {
    Table t({"date", "sig_hist", "sig_model", "sig_data", "err_hist", "err_model"});
    for (const auto& r : rows) {
        t.add_row({format_iso_date(r.date), format_number(r.sig_hist), format_number(r.sig_model),
                   format_number(r.sig_data), format_number((r.sig_data - r.sig_hist) / r.sig_data),
                   format_number((r.sig_data - *r.sig_model) / r.sig_data)});
    }
    return t;
}

// ---------------------------------------------------------------------------

void ExperimentConfig::validate() const {
    if (maturities.empty() || moneyness_grid.empty() || vol_inputs.empty()) {
        throw invalid_input("cap-skew: maturity, moneyness and vol grids must be nonempty");
    }
    for (double t : maturities) if (!(t > 0)) throw invalid_input("cap-skew: maturities must be positive");
    for (double k : moneyness_grid) if (!(k < 1)) throw invalid_input("cap-skew: moneyness must be below 1");
    for (double v : vol_inputs) if (!(v > 0)) throw invalid_input("cap-skew: vols must be positive");
    if (!(forward > 0)) throw invalid_input("cap-skew: forward must be positive");
    quad.validate();
}

Table cap_skew(const ExperimentConfig& config) {
    config.validate();
    QuadratureConfig quad = config.quad;
    quad.lower_bound_mode = config.mode;

    std::vector<std::string> header{"maturity", "moneyness", "sig_forw", "sig_model", "sig_diff", "price", "flag"};
    if (config.mc_paths > 0) {
        header.emplace_back("mc_price");
        header.emplace_back("mc_stderr");
    }
    Table t(std::move(header));

    std::uint64_t cell = 0;
    for (double maturity : config.maturities) {
        for (double k : config.moneyness_grid) {
            for (double sig_forw : config.vol_inputs) {
                const MarketParams params{config.forward, config.rate, config.rate, sig_forw, maturity};
                const OptionSpec spec{config.forward * (1.0 - k), OptionKind::call};
                std::vector<std::string> row{format_number(maturity), format_number(k), format_number(sig_forw)};
                try {
                    const MtddQuote q = mtdd_call(params, spec, quad);
                    row.push_back(format_number(q.equiv_implied_vol));
                    row.push_back(q.equiv_implied_vol ? format_number(*q.equiv_implied_vol - sig_forw) : "");
                    row.push_back(format_number(q.price));
                    row.emplace_back(q.degenerate ? "degenerate" : (q.equiv_implied_vol ? "ok" : "no_iv"));
                } catch (const std::runtime_error&) {
                    row.insert(row.end(), {"", "", "", "error"});
                }
                if (config.mc_paths > 0) {
                    const McConfig mc{config.mc_paths, derive_seed(config.seed, cell), false};
                    const McEstimate est = mc_mtdd_price(params, spec, config.mode, mc);
                    row.push_back(format_number(est.price));
                    row.push_back(format_number(est.std_error));
                }
                t.add_row(std::move(row));
                ++cell;
            }
        }
    }
    return t;
}

// ---------------------------------------------------------------------------

ValidationReport validate_oracles(const ValidateConfig& config) {
    ValidationReport report;
    auto check = [&](const std::string& name, double value, double reference, double error, double tolerance) {
        const bool pass = std::isfinite(error) && error <= tolerance;
        report.all_passed = report.all_passed && pass;
        report.table.add_row({name, format_number(value), format_number(reference), format_number(error),
                              format_number(tolerance), pass ? "pass" : "fail"});
    };

    QuadratureConfig zero = config.quad;
    zero.lower_bound_mode = LowerBoundMode::zero;
    QuadratureConfig strike = config.quad;
    strike.lower_bound_mode = LowerBoundMode::strike;

    const MarketParams atm{100.0, 0.0, 0.0, 0.2, 1.0};
    const OptionSpec call{100.0, OptionKind::call};
    const OptionSpec put{100.0, OptionKind::put};
    const double sqrt2 = std::numbers::sqrt2;
    const MarketParams atm_doubled = with_vol(atm.market(), atm.vol * sqrt2);

    {
        const double value = mtdd_call(atm, call, zero).price;
        const double ref = black_price(atm_doubled, call);
        check("tower_identity_call", value, ref, std::abs(value - ref) / ref, 1e-8);
    }
    {
        const double value = mtdd_put(atm, put, zero).price;
        const double ref = black_price(atm_doubled, put);
        check("tower_identity_put", value, ref, std::abs(value - ref) / ref, 1e-8);
    }
    {
        const MarketParams p{100.0, 0.03, 0.01, 0.25, 2.0};
        const double k = 90.0;
        const double value = mtdd_call(p, {k, OptionKind::call}, zero).price - mtdd_put(p, {k, OptionKind::put}, zero).price;
        const double ref = p.discount() * (forward_price(p) - k);
        check("parity_zero_mode", value, ref, std::abs(value - ref) / std::abs(ref), 1e-9);
    }
    for (const auto& [name, quad] : {std::pair{"mc_zero_mode", zero}, std::pair{"mc_strike_mode", strike}}) {
        const double value = mtdd_call(atm, call, quad).price;
        const McEstimate est = mc_mtdd_price(atm, call, quad.lower_bound_mode, {config.mc_paths, config.seed, false});
        check(name, value, est.price, std::abs(value - est.price) / est.std_error, 3.0);
    }
    {
        const double value = fd_discount_solve(atm, call, config.grid).value_at(forward_price(atm));
        const double ref = mtdd_profile(forward_price(atm), atm.maturity, atm, call, zero);
        check("fd_profile_atm", value, ref, std::abs(value - ref) / ref, 1e-3);
    }
    for (double ratio : {0.9, 1.1}) {
        const MarketParams p{100.0, 0.0, 0.0, 1e-4, 1.0};
        const OptionSpec spec{forward_price(p) * ratio, OptionKind::call};
        const double value = mtdd_call(p, spec, strike).price;
        const double ref = p.discount() * std::max(forward_price(p) - spec.strike, 0.0);
        check(ratio < 1 ? "intrinsic_limit_itm" : "intrinsic_limit_otm", value, ref, std::abs(value - ref), 1e-6);
    }
    {
        const double target = black_price(with_vol(atm.market(), 0.35), call);
        const double value = implied_vol(target, atm.market(), call);
        check("implied_vol_round_trip", value, 0.35, std::abs(value - 0.35), 1e-8);
    }
    return report;
}

}  // namespace mtdd
