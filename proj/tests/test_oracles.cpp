// SPDX-License-Identifier: MIT
#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "mtdd/oracles.hpp"
#include "test_support.hpp"

using namespace mtdd;

namespace {
const MarketParams kAtm{100.0, 0.0, 0.0, 0.2, 1.0};
const OptionSpec kCall{100.0, OptionKind::call};
}  // namespace

TEST(NormalStream, UniformsStayInsideUnitInterval) {
    NormalStream s(1);
    for (int i = 0; i < 100000; ++i) {
        const double u = s.uniform();
        ASSERT_GT(u, 0.0);
        ASSERT_LT(u, 1.0);
    }
}

TEST(NormalStream, SeedDeterminesSequence) {
    NormalStream a(99), b(99), c(100);
    bool differs = false;
    for (int i = 0; i < 1000; ++i) {
        const double x = a();
        EXPECT_EQ(x, b());
        differs = differs || x != c();
    }
    EXPECT_TRUE(differs);
    EXPECT_NE(derive_seed(5, 0), derive_seed(5, 1));
}

TEST(GbmSimulate, ZeroVolIsDeterministicExponential) {
    const PathSeries p = gbm_simulate(50.0, 0.07, 0.0, 2.0, 40, 3);
    ASSERT_EQ(p.values.size(), 41);
    for (Eigen::Index i = 0; i <= 40; ++i) {
        EXPECT_DOUBLE_EQ(p.values(i), 50.0 * std::exp(0.07 * p.times(i)));
    }
    EXPECT_DOUBLE_EQ(p.times(40), 2.0);
}

TEST(GbmSimulate, SameSeedSameSeries) {
    const PathSeries a = gbm_simulate(100.0, 0.05, 0.3, 1.0, 250, 42);
    const PathSeries b = gbm_simulate(100.0, 0.05, 0.3, 1.0, 250, 42);
    EXPECT_EQ(a.values, b.values);
    EXPECT_TRUE((a.values.array() > 0).all());
}

TEST(GbmSimulate, TerminalMeanIsTheForward) {
    const double s0 = 100.0, mu = 0.05, sigma = 0.3, horizon = 1.0;
    const std::size_t paths = 1'000'000;
    double mean = 0.0, m2 = 0.0;
    for (std::size_t i = 0; i < paths; ++i) {
        const double st = gbm_simulate(s0, mu, sigma, horizon, 1, derive_seed(17, i)).values(1);
        const double d = st - mean;
        mean += d / static_cast<double>(i + 1);
        m2 += d * (st - mean);
    }
    const double se = std::sqrt(m2 / (paths - 1) / paths);
    EXPECT_LT(std::abs(mean - s0 * std::exp(mu * horizon)), 4.0 * se);
}

TEST(GbmSimulate, RejectsInvalidArguments) {
    EXPECT_THROW(gbm_simulate(0.0, 0.0, 0.2, 1.0, 10, 1), invalid_input);
    EXPECT_THROW(gbm_simulate(1.0, 0.0, -0.2, 1.0, 10, 1), invalid_input);
    EXPECT_THROW(gbm_simulate(1.0, 0.0, 0.2, 1.0, 0, 1), invalid_input);
}

TEST(McMtdd, ZeroModeMatchesClosedForm) {
    const McEstimate est = mc_mtdd_price(kAtm, kCall, LowerBoundMode::zero, {2'000'000, 7, false});
    EXPECT_LT(std::abs(est.price - 11.24629160182848922), 3.0 * est.std_error);
}

TEST(McMtdd, StrikeModeBelowZeroModeOnPairedDraws) {
    for (bool anti : {false, true}) {
        const McConfig mc{200'000, 3, anti};
        const double strike = mc_mtdd_price(kAtm, kCall, LowerBoundMode::strike, mc).price;
        const double zero = mc_mtdd_price(kAtm, kCall, LowerBoundMode::zero, mc).price;
        EXPECT_LT(strike, zero);
    }
}

TEST(McMtdd, SmallVolIsIntrinsic) {
    const MarketParams p{100.0, 0.0, 0.0, 1e-4, 1.0};
    const McEstimate est = mc_mtdd_price(p, {90.0, OptionKind::call}, LowerBoundMode::zero, {100'000, 5, false});
    EXPECT_NEAR(est.price, 10.0, 1e-4);
}

TEST(McMtdd, ZeroModeAgreesWithSqrt2BlackOnGrid) {
    std::uint64_t cell = 0;
    for (double k : {-0.15, 0.0, 0.15}) {
        for (double t : {0.25, 1.0, 3.0}) {
            const MarketParams p{100.0, 0.02, 0.0, 0.25, t};
            const OptionSpec spec{forward_price(p) * (1.0 - k), OptionKind::call};
            const McEstimate est = mc_mtdd_price(p, spec, LowerBoundMode::zero, {400'000, derive_seed(1, cell++), false});
            const double ref = black_price(with_vol(p.market(), 0.25 * std::numbers::sqrt2), spec);
            EXPECT_LT(std::abs(est.price - ref), 3.0 * est.std_error) << "k=" << k << " t=" << t;
        }
    }
}

TEST(McMtdd, AntitheticReducesStandardError) {
    for (double strike : {80.0, 100.0, 120.0}) {
        const OptionSpec spec{strike, OptionKind::call};
        const McEstimate plain = mc_mtdd_price(kAtm, spec, LowerBoundMode::zero, {400'000, 9, false});
        const McEstimate anti = mc_mtdd_price(kAtm, spec, LowerBoundMode::zero, {400'000, 9, true});
        EXPECT_EQ(anti.samples, 200'000u);
        EXPECT_LT(anti.std_error, plain.std_error);
    }
}

TEST(FdDiscount, AtTheMoneyMatchesQuadrature) {
    const MarketParams p{100.0, 0.03, 0.0, 0.2, 1.0};
    const FdProfile fd = fd_discount_solve(p, kCall, FdGrid{});
    QuadratureConfig zero;
    zero.lower_bound_mode = LowerBoundMode::zero;
    const double ref = mtdd_call(p, kCall, zero).price * std::exp(0.03);
    EXPECT_LT(test::rel_diff(fd.value_at(forward_price(p)), ref), 1e-3);
}

TEST(FdDiscount, PutProfileMatchesQuadrature) {
    const OptionSpec put{110.0, OptionKind::put};
    const FdProfile fd = fd_discount_solve(kAtm, put, FdGrid{});
    QuadratureConfig zero;
    zero.lower_bound_mode = LowerBoundMode::zero;
    for (double s : {85.0, 100.0, 120.0}) {
        EXPECT_LT(test::rel_diff(fd.value_at(s), mtdd_profile(s, 1.0, kAtm, put, zero)), 1e-3) << s;
    }
}

TEST(FdDiscount, TinyMirrorTimeLeavesInitialConditionUnchanged) {
    const FdProfile fd = fd_discount_solve(kAtm, kCall, {8.0, 200, 50}, 1e-10);
    for (Eigen::Index i = 0; i < fd.zeta.size(); i += 10) {
        EXPECT_NEAR(fd.value(i), expected_payoff_bsm(fd.dummy_forward(i), kCall, 0.2, 1.0), 1e-6);
    }
}

TEST(FdDiscount, SecondOrderConvergence) {
    const double exact = black_price(with_vol(kAtm.market(), 0.2 * std::numbers::sqrt2), kCall);
    const double coarse = fd_discount_solve(kAtm, kCall, {8.0, 200, 200}).value_at(100.0) - exact;
    const double fine = fd_discount_solve(kAtm, kCall, {8.0, 400, 400}).value_at(100.0) - exact;
    const double ratio = coarse / fine;
    EXPECT_GT(ratio, 3.0);
    EXPECT_LT(ratio, 5.0);
}

TEST(FdDiscount, MonotoneInInitialCondition) {
    // Mesh ratio ≤ 1 keeps the explicit half non-negative, so ordered initial
    // data (lower strike dominates pointwise) stays ordered.
    const FdGrid grid{8.0, 200, 200};
    const FdProfile low = fd_discount_solve(kAtm, {95.0, OptionKind::call}, grid);
    const FdProfile high = fd_discount_solve(kAtm, {105.0, OptionKind::call}, grid);
    ASSERT_LE(low.mesh_ratio, 1.0);
    for (Eigen::Index i = 0; i < low.value.size(); ++i) {
        // Same centre and width, so the nodes coincide.
        EXPECT_GE(low.value(i), high.value(i));
        EXPECT_GE(low.value(i), -1e-12);
    }
}

TEST(FdDiscount, RejectsDividendsAndCoarseGrids) {
    EXPECT_THROW(fd_discount_solve({100.0, 0.0, 0.01, 0.2, 1.0}, kCall, FdGrid{}), invalid_input);
    EXPECT_THROW(fd_discount_solve(kAtm, kCall, {8.0, 20, 800}), invalid_input);
    EXPECT_THROW(fd_discount_solve(kAtm, kCall, {5.0, 800, 800}), convergence_error);
}
