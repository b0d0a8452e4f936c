#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "lifespan/fitting.hpp"

using namespace lifespan;

namespace {

std::vector<Sample> moore_samples(double a, double b, double base, int y0, int y1) {
    std::vector<Sample> s;
    for (int t = y0; t <= y1; ++t) s.push_back({double(t), double(t - y0 + 1), std::exp2(a + b * (t - base))});
    return s;
}

std::vector<Sample> wright_samples(double B, double w, int offset, int n) {
    std::vector<Sample> s;
    for (int i = 1; i <= n; ++i) s.push_back({1960.0 + i, double(i), B * std::pow(i + offset, w)});
    return s;
}

std::vector<Sample> noisy_moore(std::uint32_t seed, int n = 80) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> t(1960, 2018);
    std::normal_distribution<double> e(0.0, 1.2);
    std::vector<Sample> s;
    for (int i = 0; i < n; ++i) {
        const double x = t(rng);
        s.push_back({x, double(i + 1), std::exp2(-3.0 + 0.1 * (x - 1959) + e(rng))});
    }
    return s;
}

double sse_log2(const std::vector<Sample>& s, double a, double b, double base) {
    double acc = 0;
    for (const auto& p : s) {
        const double r = std::log2(p.lifespan) - (a + b * (p.time - base));
        acc += r * r;
    }
    return acc;
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST(FitMoore, RecoversNoiseFreeParameters) {
    const auto s = moore_samples(-4.6642, 0.13817, 1959, 1960, 2018);
    const auto r = fit_moore(s, 1959);
    EXPECT_LT(rel(r.fit.intercept_log2, -4.6642), 1e-9);
    EXPECT_LT(rel(r.fit.slope_log2, 0.13817), 1e-9);
    EXPECT_EQ(r.diagnostics.n_points, 59u);
    EXPECT_LT(r.diagnostics.rms_log2, 1e-12);
    ASSERT_TRUE(r.fit.fit_window);
    EXPECT_EQ(r.fit.fit_window->start, 1960.0);
    EXPECT_EQ(r.fit.fit_window->end, 2018.0);
}

TEST(FitMoore, FlatDataHasZeroSlopeAndNoTrend) {
    const auto s = moore_samples(1.5, 0.0, 1959, 1960, 1980);
    const auto r = fit_moore(s, 1959);
    EXPECT_NEAR(r.fit.slope_log2, 0.0, 1e-15);
    const auto d = doubling_time(0.0);
    EXPECT_TRUE(d.no_trend());
}

TEST(FitMoore, TooFewPointsOrSingleAbscissa) {
    std::vector<Sample> two{{2000, 1, 1}, {2001, 2, 2}};
    try {
        fit_moore(two, 2000);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::InsufficientData);
    }
    std::vector<Sample> same{{2000, 1, 1}, {2000, 2, 2}, {2000, 3, 4}};
    try {
        fit_moore(same, 2000);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::DegenerateAbscissa);
    }
}

TEST(FitMoore, NonpositiveLifespansExcludedAndCounted) {
    auto s = moore_samples(0.0, 0.2, 2000, 2000, 2010);
    s.push_back({2005.5, 0, 0.0});
    const auto r = fit_moore(s, 2000);
    EXPECT_EQ(r.diagnostics.n_excluded_nonpositive, 1u);
    EXPECT_EQ(r.diagnostics.n_points, 11u);
    EXPECT_NEAR(r.fit.slope_log2, 0.2, 1e-12);
}

TEST(FitMoore, OptimalAgainstRandomPerturbations) {
    const auto s = noisy_moore(42);
    const auto r = fit_moore(s, 1959);
    const double best = sse_log2(s, r.fit.intercept_log2, r.fit.slope_log2, 1959);
    std::mt19937 rng(9);
    std::normal_distribution<double> da(0.0, 0.05), db(0.0, 0.002);
    for (int i = 0; i < 1000; ++i)
        ASSERT_GE(sse_log2(s, r.fit.intercept_log2 + da(rng), r.fit.slope_log2 + db(rng), 1959), best * (1 - 1e-12));
}

TEST(FitMoore, BaseYearShiftEquivariance) {
    const auto s = noisy_moore(3);
    const auto r0 = fit_moore(s, 1959);
    for (double k : {-30.0, 1.0, 41.0}) {
        const auto r1 = fit_moore(s, 1959 + k);
        EXPECT_LT(rel(r1.fit.slope_log2, r0.fit.slope_log2), 1e-12);
        EXPECT_NEAR(r1.fit.intercept_log2, r0.fit.intercept_log2 + k * r0.fit.slope_log2, 1e-10);
        EXPECT_LT(rel(r1.diagnostics.rms_log2, r0.diagnostics.rms_log2), 1e-12);
        for (const auto& p : s) ASSERT_LT(rel(predict(r1.fit, p.time), predict(r0.fit, p.time)), 1e-12);
    }
}

TEST(FitMoore, LinearSpaceRefinementImprovesLinearRms) {
    const auto s = noisy_moore(17);
    const auto lg = fit_moore(s, 1959, ResidualSpace::Log2);
    const auto ln = fit_moore(s, 1959, ResidualSpace::Linear);
    EXPECT_FALSE(ln.diagnostics.fell_back_to_log2);
    EXPECT_EQ(ln.fit.residual_space, ResidualSpace::Linear);
    EXPECT_GT(ln.diagnostics.iterations, 0);
    EXPECT_LE(ln.diagnostics.rms_linear, lg.diagnostics.rms_linear);

    // Stationarity: the linear-space SSE gradient vanishes at the solution.
    double ga = 0, gb = 0, scale = 0;
    for (const auto& p : s) {
        const double pr = predict(ln.fit, p.time);
        const double r = p.lifespan - pr;
        ga += r * pr;
        gb += r * pr * (p.time - 1959);
        scale += pr * pr * std::abs(p.time - 1959);
    }
    EXPECT_LT(std::abs(ga) / scale, 1e-6);
    EXPECT_LT(std::abs(gb) / scale, 1e-6);
}

TEST(FitMoore, LinearSpaceOnExactDataMatchesLog2) {
    const auto s = moore_samples(-4.6642, 0.13817, 1959, 1960, 2018);
    const auto r = fit_moore(s, 1959, ResidualSpace::Linear);
    EXPECT_LT(rel(r.fit.slope_log2, 0.13817), 1e-9);
    EXPECT_LT(rel(r.fit.intercept_log2, -4.6642), 1e-9);
}

TEST(FitWright, RecoversNoiseFreeParameters) {
    const auto s = wright_samples(1.143e-5, 2.528, 7, 60);
    const auto r = fit_wright(s, 7);
    EXPECT_LT(rel(r.fit.scale_b, 1.143e-5), 1e-9);
    EXPECT_LT(rel(r.fit.exponent_w, 2.528), 1e-9);
    EXPECT_EQ(r.fit.volume_offset, 7);
}

TEST(FitWright, UnitExponent) {
    const auto s = wright_samples(0.5, 1.0, 0, 30);
    const auto r = fit_wright(s, 0);
    EXPECT_NEAR(r.fit.exponent_w, 1.0, 1e-12);
    EXPECT_NEAR(r.fit.scale_b, 0.5, 1e-12);
}

TEST(FitWright, NegativeOffsetRejected) {
    const auto s = wright_samples(1.0, 1.0, 0, 10);
    try {
        fit_wright(s, -1);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::NegativeOffset);
    }
}

TEST(RmsError, HandExample) {
    std::vector<Sample> s{{2000, 1, 2}, {2001, 2, 2}};
    const MooreFit one{2000, 0.0, 0.0};
    EXPECT_DOUBLE_EQ(rms_error(s, one, ResidualSpace::Log2), 1.0);
    EXPECT_DOUBLE_EQ(rms_error(s, one, ResidualSpace::Linear), 1.0);
}

TEST(RmsError, InterpolatingModelIsZeroAndEmptyThrows) {
    const auto s = moore_samples(0.3, 0.05, 1990, 1990, 2000);
    EXPECT_LT(rms_error(s, MooreFit{1990, 0.3, 0.05}, ResidualSpace::Log2), 1e-14);
    std::vector<Sample> none{{2000, 1, 0.0}};
    try {
        rms_error(none, MooreFit{}, ResidualSpace::Log2);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::EmptySeries);
    }
}

TEST(DoublingTime, Examples) {
    EXPECT_NEAR(*doubling_time(0.13817).years, 7.237, 5e-4);
    EXPECT_NEAR(*doubling_time(0.0576).years, 17.36, 5e-3);
    EXPECT_NEAR(*doubling_time(1.0 / 12.17).years, 12.17, 1e-12);
    EXPECT_TRUE(doubling_time(-0.0225).declining());
    EXPECT_FALSE(doubling_time(0.1).declining());
}

TEST(DoublingTime, ReciprocalOfSlope) {
    std::mt19937 rng(1);
    std::uniform_real_distribution<double> u(-1, 1);
    for (int i = 0; i < 1000; ++i) {
        const double b = u(rng);
        if (b == 0.0) continue;
        ASSERT_NEAR(*doubling_time(b).years * b, 1.0, 1e-15);
    }
}

TEST(WrightConversions, Examples) {
    EXPECT_NEAR(wright_doubling_factor(2.528), 5.768, 5e-4);
    EXPECT_NEAR(wright_doubling_factor(1.04), 2.056, 5e-4);
    EXPECT_NEAR(wright_volume_increase_for_doubling(2.528), 0.3155, 5e-4);
    EXPECT_DOUBLE_EQ(wright_volume_increase_for_doubling(1.0), 1.0);
    EXPECT_NEAR(wright_volume_increase_for_doubling(1.04), 0.947, 5e-4);
    EXPECT_THROW(wright_volume_increase_for_doubling(0.0), Error);
    EXPECT_THROW(wright_volume_increase_for_doubling(-1.0), Error);
}

TEST(Predict, Examples) {
    const auto fig4 = MooreFit::from_doubling(0.549, 12.17, 1957);
    EXPECT_NEAR(predict(fig4, 1957.0), 0.549, 1e-15);
    EXPECT_NEAR(predict(fig4, 1957.0 + 12.17), 1.098, 1e-12);
    const WrightFit fig3{1.143e-5, 2.528, 7};
    // 8^2.528 = 2^(3 * 2.528)
    EXPECT_NEAR(predict(fig3, 1.0), 1.143e-5 * std::exp2(7.584), 1e-15);
    EXPECT_NEAR(predict(fig3, 1.0), 2.193e-3, 5e-7);
}

TEST(Predict, PositiveEverywhere) {
    const MooreFit m{1959, -4.6642, 0.13817};
    for (double t = 1000; t <= 3000; t += 7.5) ASSERT_GT(predict(m, t), 0.0);
}

TEST(Sahal, ExponentialVolumeMakesModelsAgree) {
    // v(t) = v0 2^(t/T): a power law in v is an exponential in t.
    const double v0 = 3.0, T = 4.0;
    std::vector<Sample> s;
    for (int k = 0; k <= 40; ++k) {
        const double t = 1970 + 0.5 * k;
        const double v = v0 * std::exp2((t - 1970) / T);
        s.push_back({t, v, 0.01 * std::pow(v, 1.3)});
    }
    const auto m = fit_moore(s, 1970).fit;
    const auto w = fit_wright(s, 0).fit;
    for (const auto& p : s) ASSERT_LT(rel(predict(m, p.time), predict(w, p.ordinality)), 1e-9);
}

TEST(Sahal, NoisyIntegerVolumesAgreeWithinFivePercent) {
    std::mt19937 rng(2);
    std::normal_distribution<double> e(0.0, 0.4);
    const double v0 = 40.0, T = 3.0;
    std::vector<Sample> s;
    for (int k = 0; k <= 120; ++k) {
        const double t = 1960 + 0.4 * k;
        const double v = std::round(v0 * std::exp2((t - 1960) / T));
        s.push_back({t, v, 2e-4 * std::pow(v, 1.1) * std::exp2(e(rng))});
    }
    const auto m = fit_moore(s, 1960).fit;
    const auto w = fit_wright(s, 0).fit;
    for (const auto& p : s) ASSERT_LT(rel(predict(m, p.time), predict(w, p.ordinality)), 0.05) << p.time;
}
