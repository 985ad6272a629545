// SPDX-License-Identifier: MIT
#include "mtdd/returns.hpp"

#include <algorithm>
#include <string>

namespace mtdd {

void PriceSeries::validate() const {
    if (static_cast<std::size_t>(closes.size()) != dates.size()) {
        throw data_error("price series: dates and closes differ in length");
    }
    if (closes.size() < 2) throw data_error("price series: need at least 2 points");
    for (Eigen::Index i = 0; i < closes.size(); ++i) {
        if (!(closes(i) > 0) || !std::isfinite(closes(i))) {
            throw data_error("price series: non-positive close at index " + std::to_string(i));
        }
        if (i > 0 && !(dates[i - 1] < dates[i])) {
            throw data_error("price series: dates not strictly ascending at index " + std::to_string(i));
        }
    }
}

std::vector<VolEstimate> historical_vol(const PriceSeries& series, int window_days, int annualization) {
    if (window_days < 2) throw invalid_input("historical_vol: window must be at least 2 days");
    if (annualization < 1) throw invalid_input("historical_vol: annualization must be positive");
    if (series.size() <= window_days) {
        throw data_error("historical_vol: series of " + std::to_string(series.size()) +
                         " points is too short for a " + std::to_string(window_days) + "-day window");
    }

    const Eigen::Index n = series.size();
    const Eigen::VectorXd log_returns =
        (series.closes.tail(n - 1).array() / series.closes.head(n - 1).array()).log().matrix();
    const double scale = std::sqrt(static_cast<double>(annualization));

    std::vector<VolEstimate> out;
    out.reserve(static_cast<std::size_t>(n - window_days));
    for (Eigen::Index end = window_days; end < n; ++end) {
        // Returns r_j = ln(S_j/S_{j−1}) for j in (end − window, end].
        const auto window = log_returns.segment(end - window_days, window_days);
        const double mean = window.mean();
        const double ss = (window.array() - mean).square().sum();
        const double sigma = std::sqrt(ss / (window_days - 1)) * scale;
        out.push_back({static_cast<std::size_t>(end), window_days, annualization, sigma});
    }
    return out;
}

VolSource VolSource::fixed(double sigma) {
    if (!(sigma >= 0) || !std::isfinite(sigma)) throw invalid_input("VolSource: sigma must be non-negative");
    VolSource src;
    src.fixed_ = sigma;
    return src;
}

VolSource VolSource::rolling(std::vector<VolEstimate> estimates) {
    std::sort(estimates.begin(), estimates.end(),
              [](const VolEstimate& a, const VolEstimate& b) { return a.end_index < b.end_index; });
    VolSource src;
    src.rolling_ = std::move(estimates);
    return src;
}

std::optional<double> VolSource::sigma_for_step(std::size_t step) const {
    if (fixed_) return fixed_;
    auto it = std::lower_bound(rolling_.begin(), rolling_.end(), step,
                               [](const VolEstimate& e, std::size_t s) { return e.end_index < s; });
    if (it == rolling_.end() || it->end_index != step) return std::nullopt;
    return it->sigma;
}

std::size_t VolSource::reference_index(std::size_t step, std::size_t fallback) const {
    if (fixed_) return fallback;
    auto it = std::lower_bound(rolling_.begin(), rolling_.end(), step,
                               [](const VolEstimate& e, std::size_t s) { return e.end_index < s; });
    if (it == rolling_.end() || it->end_index != step) return fallback;
    return it->end_index - static_cast<std::size_t>(it->window_days);
}

std::string_view to_string(NormalizationScheme scheme) {
    switch (scheme) {
        case NormalizationScheme::xi_theoretical: return "xi_theoretical";
        case NormalizationScheme::xi_window: return "xi_window";
        case NormalizationScheme::log_window: return "log_window";
    }
    return "unknown";
}

NormalizationScheme parse_scheme(std::string_view name) {
    if (name == "xi_theoretical") return NormalizationScheme::xi_theoretical;
    if (name == "xi_window") return NormalizationScheme::xi_window;
    if (name == "log_window") return NormalizationScheme::log_window;
    throw invalid_input("unknown normalization scheme '" + std::string(name) + "'");
}

NormalizedReturnSeries normalized_returns(const PriceSeries& series, NormalizationScheme scheme, double drift,
                                          const VolSource& vol_source, const NormalizationOptions& options) {
    series.validate();
    if (!(options.dt > 0)) throw invalid_input("normalized_returns: dt must be positive");
    const auto n = static_cast<std::size_t>(series.size());
    if (options.first_step + 1 >= n) throw data_error("normalized_returns: no steps after first_step");

    const double sqrt_dt = std::sqrt(options.dt);
    const double xi_factor = options.xi_sqrt2 ? 2.0 : 1.0;
    const double log_factor = options.log_sqrt2 ? std::sqrt(2.0) : 1.0;
    const auto& s = series.closes;

    NormalizedReturnSeries out;
    out.scheme = scheme;
    std::vector<double> values;
    values.reserve(n - options.first_step - 1);

    for (std::size_t i = options.first_step; i + 1 < n; ++i) {
        const auto sigma = vol_source.sigma_for_step(i);
        if (!sigma) throw data_error("normalized_returns: no volatility for step " + std::to_string(i));
        if (*sigma == 0.0) {
            ++out.zero_vol_steps;
            continue;
        }
        const double si = s(static_cast<Eigen::Index>(i));
        const double sj = s(static_cast<Eigen::Index>(i + 1));

        bool use_log = scheme == NormalizationScheme::log_window;
        if (!use_log && std::abs(xi_exponent(drift, *sigma)) < options.degeneracy_threshold) {
            use_log = true;
            ++out.fallback_steps;
        }

        double value;
        if (use_log) {
            value = std::log(sj / si) / (*sigma * sqrt_dt * log_factor);
        } else {
            const double s0 = s(static_cast<Eigen::Index>(vol_source.reference_index(i, options.first_step)));
            const double dxi = xi_transform(sj, s0, drift, *sigma) - xi_transform(si, s0, drift, *sigma);
            value = dxi / std::sqrt(xi_factor * diffusion_coeff(si, s0, drift, *sigma) * options.dt);
        }
        out.steps.push_back(i);
        values.push_back(value);
    }
    out.values = Eigen::Map<const Eigen::VectorXd>(values.data(), static_cast<Eigen::Index>(values.size()));
    return out;
}

DistributionStats distribution_stats(const Eigen::Ref<const Eigen::VectorXd>& values, int bins) {
    if (static_cast<std::size_t>(values.size()) < kMinStatsSamples) {
        throw data_error("distribution_stats: need at least " + std::to_string(kMinStatsSamples) +
                         " samples, got " + std::to_string(values.size()));
    }
    if (bins < 1) throw invalid_input("distribution_stats: bins must be positive");

    const auto n = static_cast<double>(values.size());
    DistributionStats st;
    st.samples = static_cast<std::size_t>(values.size());
    st.mean = values.mean();

    const Eigen::ArrayXd centred = values.array() - st.mean;
    const double m2 = centred.square().sum() / n;
    const double m3 = centred.cube().sum() / n;
    const double m4 = centred.square().square().sum() / n;
    st.stddev = std::sqrt(centred.square().sum() / (n - 1));
    st.degenerate = !(m2 > 0.0);
    if (!st.degenerate) {
        st.skewness = m3 / std::pow(m2, 1.5);
        st.excess_kurtosis = m4 / (m2 * m2) - 3.0;
    }
    st.tail_mass_2 = (values.array().abs() > 2.0).count() / n;
    st.tail_mass_3 = (values.array().abs() > 3.0).count() / n;

    constexpr double lo = -5.0;
    constexpr double hi = 5.0;
    st.histogram.edges = Eigen::VectorXd::LinSpaced(bins + 1, lo, hi);
    st.histogram.counts = Eigen::VectorXi::Zero(bins);
    const double width = (hi - lo) / bins;
    for (Eigen::Index i = 0; i < values.size(); ++i) {
        const int b = std::clamp(static_cast<int>(std::floor((values(i) - lo) / width)), 0, bins - 1);
        ++st.histogram.counts(b);
    }
    return st;
}

}  // namespace mtdd
