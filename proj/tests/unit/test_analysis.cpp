#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <map>
#include <random>

#include "lifespan/analysis.hpp"
#include "lifespan/ingest.hpp"

using namespace lifespan;

namespace {

LifespanRecord ended(std::string id, CalendarDate launch, CalendarDate end) {
    return {std::move(id), "", std::nullopt, launch, end, RecordStatus::Ended, RecordSource::Satcat};
}

LifespanRecord operating(std::string id, CalendarDate launch) {
    return {std::move(id), "", std::nullopt, launch, std::nullopt, RecordStatus::Operational, RecordSource::MissionList};
}

std::vector<LifespanRecord> fixture_satellites() {
    const auto spec = SatcatColumnSpec::load(std::string(LIFESPAN_DATA_DIR) + "/satcat_columns.json");
    std::ifstream in(std::string(LIFESPAN_DATA_DIR) + "/satcat_fixture.txt");
    return filter_satellite_lifespans(parse_satcat(in, spec).records).kept;
}

}  // namespace

TEST(EndDatedSeries, DropsOperationalAndSortsByEnd) {
    std::vector<LifespanRecord> recs{
        ended("b", CalendarDate::ymd(1990, 1, 1), CalendarDate::ymd(1995, 6, 1)),
        operating("v2", CalendarDate::ymd(1977, 8, 20)),
        ended("a", CalendarDate::ymd(1980, 1, 1), CalendarDate::ymd(1985, 6, 1)),
        ended("z", CalendarDate::y(1962), CalendarDate::y(1962)),
    };
    const auto s = build_end_dated_series(recs);
    ASSERT_EQ(s.size(), 2u);
    EXPECT_EQ(s.points[0].id, "a");
    EXPECT_EQ(s.points[1].id, "b");
    EXPECT_EQ(s.dropped_operational, 1u);
    EXPECT_EQ(s.dropped_nonpositive, 1u);
    EXPECT_EQ(s.size() + s.dropped_operational + s.dropped_nonpositive + s.dropped_excluded, recs.size());
}

TEST(EndDatedSeries, EmptyInput) {
    EXPECT_TRUE(build_end_dated_series(std::vector<LifespanRecord>{}).empty());
}

TEST(EndDatedSeries, TiesBrokenById) {
    std::vector<LifespanRecord> recs{ended("y", CalendarDate::y(1990), CalendarDate::y(1995)),
                                     ended("x", CalendarDate::y(1991), CalendarDate::y(1995))};
    const auto s = build_end_dated_series(recs);
    EXPECT_EQ(s.points[0].id, "x");
}

TEST(Ordinality, OffsetExamples) {
    EndDatedSeries s;
    for (int i = 0; i < 50; ++i) s.points.push_back({1960.0 + i, 1.0, std::to_string(i)});
    const auto v7 = assign_ordinality(s, 7);
    EXPECT_EQ(v7.points.front().volume, 8);
    EXPECT_EQ(v7.points[49].volume, 57);
    EXPECT_EQ(assign_ordinality(s, 0).points.front().volume, 1);
    try {
        assign_ordinality(s, -1);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::NegativeOffset);
    }
}

TEST(Annual, SingleAndPairedYears) {
    const auto one = aggregate_annual(std::vector{ended("a", CalendarDate::y(1986), CalendarDate::y(1990))});
    ASSERT_EQ(one.rows.size(), 1u);
    EXPECT_EQ(one.rows[0].year, 1990);
    EXPECT_EQ(one.rows[0].ended_count, 1);
    EXPECT_EQ(*one.rows[0].mean_lifespan, 4.0);
    EXPECT_EQ(one.rows[0].cumulative_ordinality, 1);

    const auto two = aggregate_annual(std::vector{ended("a", CalendarDate::y(1988), CalendarDate::y(1990)),
                                                  ended("b", CalendarDate::y(1986), CalendarDate::y(1990))});
    EXPECT_EQ(*two.rows[0].mean_lifespan, 3.0);
}

TEST(Annual, GapYearsKeptWithZeroCount) {
    const auto agg = aggregate_annual(std::vector{ended("a", CalendarDate::y(1980), CalendarDate::y(1990)),
                                                  ended("b", CalendarDate::y(1980), CalendarDate::y(1993))});
    ASSERT_EQ(agg.rows.size(), 4u);
    EXPECT_EQ(agg.rows[1].ended_count, 0);
    EXPECT_FALSE(agg.rows[1].mean_lifespan);
    EXPECT_EQ(agg.rows[1].cumulative_ordinality, 1);
    EXPECT_EQ(agg.rows[3].cumulative_ordinality, 2);
    EXPECT_EQ(to_samples(agg).size(), 2u);
}

TEST(Annual, FixtureEarlyYearCounts) {
    const auto agg = aggregate_annual(fixture_satellites());
    std::map<int, long> counts;
    for (const auto& r : agg.rows) counts[r.year] = r.ended_count;
    EXPECT_EQ(counts[1957], 1);
    EXPECT_EQ(counts[1958], 6);
    EXPECT_EQ(counts[1959], 10);
    EXPECT_EQ(counts[1960], 20);
    EXPECT_EQ(counts[1961], 58);
}

TEST(Annual, MatchesBruteForceOnSmallInstances) {
    std::mt19937 rng(123);
    for (int trial = 0; trial < 200; ++trial) {
        std::uniform_int_distribution<int> n_d(1, 100), y_d(1960, 2000), len_d(0, 15);
        std::vector<LifespanRecord> recs;
        const int n = n_d(rng);
        for (int i = 0; i < n; ++i) {
            const int y = y_d(rng);
            if (i % 7 == 3)
                recs.push_back(operating("o" + std::to_string(i), CalendarDate::y(y)));
            else
                recs.push_back(ended("e" + std::to_string(i), CalendarDate::y(y), CalendarDate::y(y + len_d(rng))));
        }
        const auto agg = aggregate_annual(recs);
        long prev = 0;
        for (const auto& row : agg.rows) {
            long cnt = 0, cum = 0;
            double sum = 0;
            for (const auto& r : recs) {
                if (r.status != RecordStatus::Ended) continue;
                const int ey = r.end->year();
                if (ey == row.year) ++cnt, sum += double(ey - r.launch.year());
                if (ey <= row.year) ++cum;
            }
            ASSERT_EQ(row.ended_count, cnt);
            ASSERT_EQ(row.cumulative_ordinality, cum);
            ASSERT_GE(row.cumulative_ordinality, prev);
            prev = row.cumulative_ordinality;
            if (cnt)
                ASSERT_NEAR(*row.mean_lifespan, sum / cnt, 1e-12);
            else
                ASSERT_FALSE(row.mean_lifespan);
        }
    }
}

TEST(Window, NoBoundsIsIdentity) {
    EndDatedSeries s;
    for (int i = 0; i < 5; ++i) s.points.push_back({1960.5 + i, 1.0, std::to_string(i)});
    const auto w = apply_window(s, WindowPolicy{}, Law::Moore);
    EXPECT_EQ(w.trimmed, 0u);
    EXPECT_EQ(w.data.size(), 5u);
}

TEST(Window, PerLawStartsAndInclusiveEnd) {
    AnnualAggregate agg;
    for (int y = 1957; y <= 2018; ++y) agg.rows.push_back({y, 1, 1.0, y - 1956});
    const WindowPolicy p{1967, 1961, 2017};
    const auto m = apply_window(agg, p, Law::Moore);
    const auto w = apply_window(agg, p, Law::Wright);
    EXPECT_EQ(m.data.rows.front().year, 1967);
    EXPECT_EQ(w.data.rows.front().year, 1961);
    EXPECT_EQ(m.data.rows.back().year, 2017);
    EXPECT_EQ(m.trimmed, 11u);
    // Values are untouched: cumulative ordinality keeps counting from the full series.
    EXPECT_EQ(w.data.rows.front().cumulative_ordinality, 5);
}

TEST(Window, EmptyAndInvertedWindows) {
    EndDatedSeries s;
    s.points.push_back({1960.5, 1.0, "a"});
    try {
        apply_window(s, WindowPolicy{1990, 1990, std::nullopt}, Law::Moore);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::EmptyAfterWindow);
    }
    EXPECT_THROW(apply_window(s, WindowPolicy{2000, std::nullopt, 1990}, Law::Moore), Error);
}

TEST(Compare, WrightGeneratedDataFavoursWright) {
    std::vector<Sample> s;
    for (int i = 1; i <= 60; ++i) s.push_back({1960.0 + 0.8 * i, double(i), 1.143e-5 * std::pow(i + 7, 2.528)});
    const auto m = fit_moore(s, 1959).fit;
    const auto w = fit_wright(s, 7).fit;
    const auto rep = compare_models(s, m, w, ResidualSpace::Log2);
    EXPECT_EQ(rep.winner, Winner::Wright);
    EXPECT_GT(rep.moore_rms, 0.0);
    EXPECT_EQ(rep.n_points, 60u);
}

TEST(Compare, SahalConstructionIsATie) {
    std::vector<Sample> s;
    for (int k = 0; k < 40; ++k) {
        const double t = 1980 + k;
        s.push_back({t, 2.0 * std::exp2(k / 5.0), 0.25 * std::exp2(0.08 * k)});
    }
    const auto rep = compare_models(s, fit_moore(s, 1980).fit, fit_wright(s, 0).fit, ResidualSpace::Log2);
    EXPECT_EQ(rep.winner, Winner::Tie);
}

TEST(Compare, MismatchedWindowRejected) {
    std::vector<Sample> s;
    for (int i = 1; i <= 20; ++i) s.push_back({1960.0 + i, double(i), std::exp2(0.1 * i)});
    const auto m = fit_moore(s, 1959).fit;
    const auto w = fit_wright(s, 0).fit;
    const std::vector<Sample> sub(s.begin() + 2, s.end());
    try {
        compare_models(sub, m, w, ResidualSpace::Log2);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::MismatchedSeries);
    }
}

TEST(Compare, TieTolerance) {
    EXPECT_EQ(pick_winner(1.0, 1.0 + 1e-12), Winner::Tie);
    EXPECT_EQ(pick_winner(1e-16, 3e-16), Winner::Tie);
    EXPECT_EQ(pick_winner(2.485, 2.459), Winner::Wright);
    EXPECT_EQ(pick_winner(1.0, 1.1), Winner::Moore);
}

TEST(Forecast, MooreClosedForm) {
    const auto fit = MooreFit::from_doubling(0.549, 12.17, 1957);
    const double y = year_for_lifespan(fit, 100.0);
    EXPECT_NEAR(y, 1957 + 12.17 * std::log2(100 / 0.549), 1e-9);
    EXPECT_NEAR(y, 2048.4, 0.05);
    EXPECT_NEAR(predict(fit, y), 100.0, 1e-9);
}

TEST(Forecast, InverseRoundTrips) {
    std::mt19937 rng(77);
    std::uniform_real_distribution<double> a(-6, 2), b(0.01, 0.3), t(1950, 2100), bw(1e-6, 1), w(0.2, 3), v(1, 1e4);
    for (int i = 0; i < 1000; ++i) {
        const MooreFit m{1959, a(rng), b(rng)};
        const double year = t(rng);
        ASSERT_NEAR(year_for_lifespan(m, predict(m, year)), year, 1e-9 * std::abs(year));
        const WrightFit wf{bw(rng), w(rng), i % 9};
        const double vol = v(rng);
        ASSERT_NEAR(volume_for_lifespan(wf, predict(wf, vol)), vol, 1e-9 * vol);
    }
}

TEST(Forecast, WrightExamples) {
    const WrightFit fig3{1.143e-5, 2.528, 7};
    EXPECT_NEAR(volume_for_lifespan(fig3, predict(fig3, 57.0)), 57.0, 1e-9);
    EXPECT_NEAR(volume_for_lifespan(fig3, 1.0), std::pow(1 / 1.143e-5, 1 / 2.528) - 7, 1e-9);
    EXPECT_NEAR(volume_for_lifespan(fig3, 1.0), 83.1, 0.1);
    EXPECT_NEAR(volume_for_lifespan(WrightFit{0.3, 1.7, 0}, 0.3), 1.0, 1e-12);
}

TEST(Forecast, NoGrowthAndBadTargets) {
    try {
        year_for_lifespan(MooreFit{1957, 0.0, 0.0}, 100);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::NoGrowth);
    }
    try {
        volume_for_lifespan(WrightFit{1.0, -0.5, 0}, 10);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::NoGrowth);
    }
    try {
        year_for_lifespan(MooreFit{1957, 0.0, 0.1}, -1);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::InvalidArgument);
    }
}
