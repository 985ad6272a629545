// SPDX-License-Identifier: MIT
//
// mtdd: command-line front end for the mirror-time diffusion discount model.
//
//   mtdd price --spot 100 --strike 100 --vol 0.2 --maturity 1
//   mtdd --mode zero cap-skew --maturities 0.5,1,2 --moneyness -0.2,0,0.2 --vols 0.2
//   mtdd analyze-returns data.csv --drift 0.05 --model-vol 0.2 --histogram hist.csv
//   mtdd bias-study data.csv --window 90 --maturity-days 30
//   mtdd validate --paths 1000000
//
// Exit codes: 0 success, 2 usage error, 3 data error, 4 numerical non-convergence.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "mtdd/empirics.hpp"

namespace {

using namespace mtdd;

struct GlobalOptions {
    std::string mode = "strike";
    std::uint64_t seed = 20080225;
    std::string output;
    bool csv = false;
};

struct MarketOptions {
    double spot = 100.0;
    double strike = 100.0;
    double rate = 0.0;
    double dividend = 0.0;
    double vol = 0.2;
    double maturity = 1.0;
    std::string kind = "call";
    int nodes = 256;
    double halfwidth = 8.0;
    double tolerance = 1e-9;
};

void add_market_options(CLI::App* cmd, MarketOptions& m) {
    cmd->add_option("--spot", m.spot, "Spot price S0")->check(CLI::PositiveNumber)->capture_default_str();
    cmd->add_option("--strike", m.strike, "Strike K")->check(CLI::PositiveNumber)->capture_default_str();
    cmd->add_option("--rate", m.rate, "Continuously compounded rate r")->capture_default_str();
    cmd->add_option("--dividend", m.dividend, "Dividend yield q")->capture_default_str();
    cmd->add_option("--vol", m.vol, "Volatility sigma")->check(CLI::PositiveNumber)->capture_default_str();
    cmd->add_option("--maturity", m.maturity, "Maturity T in years")->check(CLI::PositiveNumber)->capture_default_str();
    cmd->add_option("--kind", m.kind, "call or put")->check(CLI::IsMember({"call", "put"}))->capture_default_str();
    cmd->add_option("--nodes", m.nodes, "Initial Gauss-Legendre nodes")->capture_default_str();
    cmd->add_option("--halfwidth", m.halfwidth, "Truncation half-width in kernel std devs")->capture_default_str();
    cmd->add_option("--tol", m.tolerance, "Quadrature relative tolerance")->capture_default_str();
}

MarketParams to_params(const MarketOptions& m) { return {m.spot, m.rate, m.dividend, m.vol, m.maturity}; }

QuadratureConfig to_quad(const MarketOptions& m, const GlobalOptions& g) {
    QuadratureConfig q;
    q.lower_bound_mode = parse_mode(g.mode);
    q.nodes = m.nodes;
    q.truncation_halfwidth = m.halfwidth;
    q.rel_tolerance = m.tolerance;
    q.max_nodes = std::max(q.max_nodes, q.nodes);
    return q;
}

void emit(const Table& table, const GlobalOptions& g) {
    if (!g.output.empty()) {
        std::ofstream out(g.output);
        if (!out) throw data_error("cannot write " + g.output);
        table.write_csv(out);
    }
    if (g.csv) table.write_csv(std::cout);
    else table.write_pretty(std::cout);
}

void write_file(const Table& table, const std::string& path) {
    if (path.empty()) return;
    std::ofstream out(path);
    if (!out) throw data_error("cannot write " + path);
    table.write_csv(out);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Mirror-time diffusion discount option pricing"};
    app.require_subcommand(1);

    GlobalOptions g;
    app.add_option("--mode", g.mode, "Kernel integral lower bound: strike or zero")
        ->check(CLI::IsMember({"strike", "zero"}))
        ->capture_default_str();
    app.add_option("--seed", g.seed, "Random seed")->capture_default_str();
    app.add_option("--output", g.output, "Write the main table as CSV to this file");
    app.add_flag("--csv", g.csv, "Print CSV instead of an aligned table");

    // price
    MarketOptions price_opts;
    auto* price = app.add_subcommand("price", "Price one option and report its Black-equivalent vol");
    add_market_options(price, price_opts);

    // profile
    MarketOptions profile_opts;
    std::vector<double> s_now;
    std::optional<double> elapsed;
    auto* profile = app.add_subcommand("profile", "Value profile V^T(s) at an intermediate mirror time");
    add_market_options(profile, profile_opts);
    profile->add_option("--s-now", s_now, "Forward price levels (default: the forward)")->delimiter(',');
    profile->add_option("--elapsed", elapsed, "Mirror time to maturity (default: T)");

    // analyze-returns
    std::string returns_path;
    std::string histogram_path;
    AnalyzeConfig analyze_cfg;
    std::optional<double> model_vol;
    std::vector<std::string> schemes;
    bool xi_no_sqrt2 = false;
    auto* analyze = app.add_subcommand("analyze-returns", "Distribution statistics of normalized returns");
    analyze->add_option("input", returns_path, "CSV with date,close[,implied_vol]")->required();
    analyze->add_option("--drift", analyze_cfg.drift, "Annual drift mu")->capture_default_str();
    analyze->add_option("--window", analyze_cfg.window, "Rolling window for xi_window/log_window")->capture_default_str();
    analyze->add_option("--theory-window", analyze_cfg.theory_window, "Rolling window for xi_theoretical")
        ->capture_default_str();
    analyze->add_option("--model-vol", model_vol, "Fixed model vol for xi_theoretical");
    analyze->add_option("--annualization", analyze_cfg.annualization, "Trading days per year")->capture_default_str();
    analyze->add_option("--bins", analyze_cfg.bins, "Histogram bins over [-5, 5]")->capture_default_str();
    analyze->add_option("--scheme", schemes, "xi_theoretical, xi_window, log_window (repeatable)")->delimiter(',');
    analyze->add_option("--histogram", histogram_path, "Write histogram densities as CSV");
    analyze->add_flag("--log-sqrt2", analyze_cfg.log_sqrt2, "Normalize log-returns by sigma*sqrt(2 dt)");
    analyze->add_flag("--xi-no-sqrt2", xi_no_sqrt2, "Normalize xi-returns by sqrt(D dt)");

    // bias-study
    std::string bias_path;
    std::string series_path;
    BiasConfig bias_cfg;
    auto* bias = app.add_subcommand("bias-study", "Historical vs model-implied vol against quoted implied vol");
    bias->add_option("input", bias_path, "CSV with date,close,implied_vol")->required();
    bias->add_option("--window", bias_cfg.window, "Historical vol window in days")->capture_default_str();
    bias->add_option("--maturity-days", bias_cfg.maturity_days, "Option maturity in calendar days")->capture_default_str();
    bias->add_option("--day-count", bias_cfg.day_count, "Calendar days per year")->capture_default_str();
    bias->add_option("--annualization", bias_cfg.annualization, "Trading days per year")->capture_default_str();
    bias->add_option("--rate", bias_cfg.rate, "Flat rate")->capture_default_str();
    bias->add_option("--series", series_path, "Write the per-date error series as CSV");

    // cap-skew
    ExperimentConfig cap_cfg;
    cap_cfg.maturities = {0.5, 1.0, 2.0, 3.0, 5.0};
    cap_cfg.moneyness_grid = {-0.2, -0.1, 0.0, 0.1, 0.2};
    cap_cfg.vol_inputs = {0.2};
    auto* cap = app.add_subcommand("cap-skew", "Caplet Black vol implied by the model across maturity and moneyness");
    cap->add_option("--maturities", cap_cfg.maturities, "Caplet maturities in years")->delimiter(',')->capture_default_str();
    cap->add_option("--moneyness", cap_cfg.moneyness_grid, "Relative moneyness k values")->delimiter(',')->capture_default_str();
    cap->add_option("--vols", cap_cfg.vol_inputs, "Forward-rate vols SigI_Forw")->delimiter(',')->capture_default_str();
    cap->add_option("--forward", cap_cfg.forward, "Scalar forward rate")->capture_default_str();
    cap->add_option("--rate", cap_cfg.rate, "Flat discount rate")->capture_default_str();
    cap->add_option("--mc-paths", cap_cfg.mc_paths, "Monte Carlo paths per cell (0 disables)")->capture_default_str();

    // validate
    ValidateConfig val_cfg;
    auto* validate = app.add_subcommand("validate", "Run the oracle cross-checks");
    validate->add_option("--paths", val_cfg.mc_paths, "Monte Carlo paths")->capture_default_str();
    validate->add_option("--space-steps", val_cfg.grid.space_steps, "FD space steps")->capture_default_str();
    validate->add_option("--time-steps", val_cfg.grid.time_steps, "FD time steps")->capture_default_str();

    for (auto* sub : app.get_subcommands({})) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : static_cast<int>(ExitCode::usage);
    }

    try {
        if (price->parsed()) {
            OptionSpec spec{price_opts.strike, parse_kind(price_opts.kind)};
            emit(price_report(to_params(price_opts), spec, to_quad(price_opts, g)).table(), g);
        } else if (profile->parsed()) {
            const MarketParams params = to_params(profile_opts);
            params.validate();
            if (s_now.empty()) s_now.push_back(forward_price(params));
            OptionSpec spec{profile_opts.strike, parse_kind(profile_opts.kind)};
            emit(profile_table(params, spec, to_quad(profile_opts, g), s_now, elapsed.value_or(params.maturity)), g);
        } else if (analyze->parsed()) {
            analyze_cfg.model_vol = model_vol;
            analyze_cfg.xi_sqrt2 = !xi_no_sqrt2;
            if (!schemes.empty()) {
                analyze_cfg.schemes.clear();
                for (const auto& s : schemes) analyze_cfg.schemes.push_back(parse_scheme(s));
            }
            const ReturnsAnalysis analysis = analyze_returns(csv_ingest(returns_path), analyze_cfg);
            write_file(analysis.histogram_table(), histogram_path);
            emit(analysis.stats_table(), g);
        } else if (bias->parsed()) {
            bias_cfg.quad.lower_bound_mode = parse_mode(g.mode);
            const BiasReport report = bias_study(csv_ingest(bias_path), bias_cfg);
            write_file(report.series_table(), series_path);
            emit(report.summary_table(), g);
        } else if (cap->parsed()) {
            cap_cfg.mode = parse_mode(g.mode);
            cap_cfg.seed = g.seed;
            cap_cfg.output_path = g.output;
            emit(cap_skew(cap_cfg), g);
        } else if (validate->parsed()) {
            val_cfg.seed = g.seed;
            const ValidationReport report = validate_oracles(val_cfg);
            emit(report.table, g);
            if (!report.all_passed) return static_cast<int>(ExitCode::numerical);
        }
    } catch (const invalid_input& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return static_cast<int>(ExitCode::usage);
    } catch (const convergence_error& e) {
        std::cerr << "numerical error: " << e.what() << '\n';
        return static_cast<int>(ExitCode::numerical);
    } catch (const std::exception& e) {
        std::cerr << "data error: " << e.what() << '\n';
        return static_cast<int>(ExitCode::data);
    }
    return 0;
}
