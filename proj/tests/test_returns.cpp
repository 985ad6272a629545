// SPDX-License-Identifier: MIT
#include <gtest/gtest.h>

#include <cmath>

#include "mtdd/oracles.hpp"
#include "mtdd/returns.hpp"
#include "test_support.hpp"

using namespace mtdd;

namespace {

PriceSeries make_series(const Eigen::VectorXd& closes) {
    PriceSeries s;
    s.closes = closes;
    const Date start = std::chrono::year{2001} / 1 / 1;
    for (Eigen::Index i = 0; i < closes.size(); ++i) s.dates.push_back(start + std::chrono::days{i});
    return s;
}

PriceSeries gbm_series(double mu, double sigma, int steps, std::uint64_t seed) {
    return make_series(gbm_simulate(100.0, mu, sigma, steps / 252.0, steps, seed).values);
}

}  // namespace

TEST(XiTransform, ReferenceValues) {
    EXPECT_DOUBLE_EQ(xi_exponent(0.05, 0.2), -1.5);
    EXPECT_NEAR(xi_transform(110.0, 100.0, 0.05, 0.2), 0.8667841720414475595, 1e-15);
    EXPECT_DOUBLE_EQ(xi_transform(100.0, 100.0, 0.05, 0.2), 1.0);
    EXPECT_NEAR(diffusion_coeff(100.0, 100.0, 0.05, 0.2), 0.02 * 2.25, 1e-16);
    EXPECT_NEAR(zeta_q_transform(100.0, 100.0, 0.05, 0.2, 2.0), 0.06, 1e-15);
}

TEST(XiTransform, MonotoneWithNonNegativeDiffusion) {
    for (double mu : {-0.1, 0.0, 0.02, 0.1}) {
        for (double sigma : {0.1, 0.3}) {
            const double a = xi_exponent(mu, sigma);
            double prev = xi_transform(1.0, 100.0, mu, sigma);
            for (double s = 2.0; s < 400.0; s *= 1.1) {
                const double x = xi_transform(s, 100.0, mu, sigma);
                if (a > 0) EXPECT_GT(x, prev); else EXPECT_LT(x, prev);
                EXPECT_GE(diffusion_coeff(s, 100.0, mu, sigma), 0.0);
                prev = x;
            }
        }
    }
}

TEST(XiTransform, ZeroDriftIsIdentityRatio) {
    for (double s : {50.0, 100.0, 170.0}) {
        EXPECT_NEAR(xi_transform(s, 100.0, 0.0, 0.25), s / 100.0, 1e-15);
        EXPECT_NEAR(diffusion_coeff(s, 100.0, 0.0, 0.25), 0.25 * 0.25 / 2 * s * s / 1e4, 1e-15);
    }
}

TEST(HistoricalVol, ConstantSeriesHasZeroVol) {
    const auto vols = historical_vol(make_series(Eigen::VectorXd::Constant(40, 25.0)), 30);
    ASSERT_EQ(vols.size(), 10u);
    EXPECT_EQ(vols.front().end_index, 30u);
    for (const auto& v : vols) EXPECT_EQ(v.sigma, 0.0);
}

TEST(HistoricalVol, RecoversGbmVolatility) {
    const PriceSeries s = gbm_series(0.05, 0.2, 10'000, 8);
    const auto vols = historical_vol(s, 10'000);
    ASSERT_EQ(vols.size(), 1u);
    // Standard error of a sample stddev: σ/√(2(n − 1)).
    EXPECT_LT(std::abs(vols[0].sigma - 0.2), 2.0 * 0.2 / std::sqrt(2.0 * 9'999));
}

TEST(HistoricalVol, RejectsShortSeriesAndBadWindows) {
    const PriceSeries s = gbm_series(0.0, 0.2, 20, 1);
    EXPECT_THROW(historical_vol(s, 30), data_error);
    EXPECT_THROW(historical_vol(s, 1), invalid_input);
}

TEST(NormalizedReturns, DeterministicGrowthGivesConstantReturns) {
    const PriceSeries s = gbm_series(0.05, 0.0, 100, 1);
    const auto r = normalized_returns(s, NormalizationScheme::xi_theoretical, 0.05, VolSource::fixed(0.2));
    ASSERT_EQ(r.size(), 100);
    for (Eigen::Index i = 1; i < r.size(); ++i) EXPECT_NEAR(r.values(i), r.values(0), 1e-10);
}

TEST(NormalizedReturns, ZeroDriftMatchesSimpleReturns) {
    const PriceSeries s = gbm_series(0.0, 0.2, 300, 4);
    const double dt = 1.0 / 252.0;
    const auto r = normalized_returns(s, NormalizationScheme::xi_theoretical, 0.0, VolSource::fixed(0.2));
    for (Eigen::Index i = 0; i < r.size(); ++i) {
        const double simple = s.closes(i + 1) / s.closes(i) - 1.0;
        EXPECT_NEAR(r.values(i), simple / (0.2 * std::sqrt(dt)), 1e-10);
    }
}

TEST(NormalizedReturns, ReturnsDoNotDependOnReferencePrice) {
    const PriceSeries s = gbm_series(0.05, 0.2, 200, 5);
    NormalizationOptions late;
    late.first_step = 50;
    const auto all = normalized_returns(s, NormalizationScheme::xi_theoretical, 0.05, VolSource::fixed(0.2));
    const auto tail = normalized_returns(s, NormalizationScheme::xi_theoretical, 0.05, VolSource::fixed(0.2), late);
    ASSERT_EQ(tail.size(), all.size() - 50);
    for (Eigen::Index i = 0; i < tail.size(); ++i) EXPECT_NEAR(tail.values(i), all.values(i + 50), 1e-9);
}

TEST(NormalizedReturns, ExactLognormalMomentsUnderGbm) {
    // Each return is (e^Y − 1)/s with Y ~ N(−s²/2, s²), s = |a|σ√Δt.
    const double mu = 0.05, sigma = 0.2, dt = 1.0 / 252.0;
    const int n = 100'000;
    const auto r = normalized_returns(gbm_series(mu, sigma, n, 20080225), NormalizationScheme::xi_theoretical, mu,
                                      VolSource::fixed(sigma));
    const DistributionStats st = distribution_stats(r);
    const double s2 = std::pow(std::abs(xi_exponent(mu, sigma)) * sigma, 2) * dt;
    const double e = std::exp(s2);
    const double variance = (e - 1.0) / s2;
    const double skew = (e + 2.0) * std::sqrt(e - 1.0);
    const double kurt = std::pow(e, 4) + 2 * std::pow(e, 3) + 3 * e * e - 6.0;

    EXPECT_LT(std::abs(st.mean), 4.0 * std::sqrt(variance / n));
    EXPECT_LT(std::abs(st.stddev * st.stddev - variance), 4.0 * std::sqrt(2.0 / n));
    EXPECT_LT(std::abs(st.skewness - skew), 4.0 * std::sqrt(6.0 / n));
    EXPECT_LT(std::abs(st.excess_kurtosis - kurt), 4.0 * std::sqrt(24.0 / n));
    EXPECT_NEAR(skew, 0.0567, 1e-4);
}

TEST(NormalizedReturns, XiAndLogReturnsAgreeToFirstOrder) {
    const double mu = 0.05, sigma = 0.2, dt = 1.0 / 252.0;
    const PriceSeries s = gbm_series(mu, sigma, 2000, 31);
    const auto xi = normalized_returns(s, NormalizationScheme::xi_theoretical, mu, VolSource::fixed(sigma));
    const auto lg = normalized_returns(s, NormalizationScheme::log_window, mu, VolSource::fixed(sigma));
    const double a = xi_exponent(mu, sigma);
    const double scale = std::abs(a) * sigma * std::sqrt(dt);
    ASSERT_EQ(xi.size(), lg.size());
    for (Eigen::Index i = 0; i < xi.size(); ++i) {
        // ξ moves against S when a < 0; the gap is the quadratic term of e^{aX} − 1.
        const double z = std::copysign(1.0, a) * lg.values(i);
        EXPECT_LE(std::abs(xi.values(i) - z), scale * z * z + 1e-12) << i;
    }
}

TEST(NormalizedReturns, DegenerateExponentFallsBackToLogReturns) {
    const double sigma = 0.2;
    const PriceSeries s = gbm_series(0.02, sigma, 100, 2);
    const auto xi = normalized_returns(s, NormalizationScheme::xi_theoretical, sigma * sigma / 2, VolSource::fixed(sigma));
    const auto lg = normalized_returns(s, NormalizationScheme::log_window, sigma * sigma / 2, VolSource::fixed(sigma));
    EXPECT_EQ(xi.fallback_steps, 100u);
    EXPECT_EQ(xi.values, lg.values);
}

TEST(NormalizedReturns, RollingSourceSkipsZeroVolAndRequiresCoverage) {
    Eigen::VectorXd closes = Eigen::VectorXd::Constant(60, 10.0);
    const PriceSeries flat = make_series(closes);
    const auto src = VolSource::rolling(historical_vol(flat, 20));
    NormalizationOptions opts;
    opts.first_step = 20;
    const auto r = normalized_returns(flat, NormalizationScheme::xi_window, 0.0, src, opts);
    EXPECT_EQ(r.size(), 0);
    EXPECT_EQ(r.zero_vol_steps, 39u);
    EXPECT_THROW(normalized_returns(flat, NormalizationScheme::xi_window, 0.0, src), data_error);
}

TEST(NormalizedReturns, RollingReferenceIsWindowStart) {
    const PriceSeries s = gbm_series(0.05, 0.2, 300, 77);
    const auto vols = historical_vol(s, 30);
    const auto src = VolSource::rolling(vols);
    EXPECT_EQ(src.reference_index(30, 0), 0u);
    EXPECT_EQ(src.reference_index(100, 0), 70u);
    EXPECT_EQ(src.sigma_for_step(100), vols[70].sigma);
    EXPECT_FALSE(src.sigma_for_step(29).has_value());
}

TEST(Scheme, NamesRoundTrip) {
    for (auto s : {NormalizationScheme::xi_theoretical, NormalizationScheme::xi_window, NormalizationScheme::log_window}) {
        EXPECT_EQ(parse_scheme(to_string(s)), s);
    }
    EXPECT_THROW(parse_scheme("raw"), invalid_input);
}

TEST(DistributionStats, NormalSample) {
    NormalStream z(3);
    Eigen::VectorXd x(200'000);
    for (auto& v : x) v = z();
    const DistributionStats st = distribution_stats(x);
    EXPECT_NEAR(st.mean, 0.0, 4.0 / std::sqrt(2e5));
    EXPECT_NEAR(st.stddev, 1.0, 0.01);
    EXPECT_NEAR(st.skewness, 0.0, 4.0 * std::sqrt(6.0 / 2e5));
    EXPECT_NEAR(st.excess_kurtosis, 0.0, 4.0 * std::sqrt(24.0 / 2e5));
    EXPECT_NEAR(st.tail_mass_2, 0.045500263896358414401, 0.002);
    EXPECT_NEAR(st.tail_mass_3, 0.0026997960632601890533, 0.0005);
    EXPECT_EQ(st.histogram.counts.sum(), 200'000);
    EXPECT_EQ(st.histogram.edges.size(), 51);
}

TEST(DistributionStats, HistogramClampsOutliers) {
    Eigen::VectorXd x = Eigen::VectorXd::Zero(40);
    x(0) = -50.0;
    x(1) = 50.0;
    const DistributionStats st = distribution_stats(x, 10);
    EXPECT_EQ(st.histogram.counts(0), 1);
    EXPECT_EQ(st.histogram.counts(9), 1);
    EXPECT_EQ(st.histogram.counts.sum(), 40);
}

TEST(DistributionStats, DegenerateAndTooSmall) {
    const DistributionStats st = distribution_stats(Eigen::VectorXd::Constant(50, 1.5));
    EXPECT_TRUE(st.degenerate);
    EXPECT_EQ(st.skewness, 0.0);
    EXPECT_EQ(st.stddev, 0.0);
    EXPECT_THROW(distribution_stats(Eigen::VectorXd::Zero(29)), data_error);
}
