#include <gtest/gtest.h>

#include <sstream>

#include "lifespan/report.hpp"
#include "lifespan/svg.hpp"

using namespace lifespan;

TEST(Svg, RendersPowerOfTwoTicksAndLayers) {
    svg::LogPlot plot("Lifespan <trend>", "Year", "Lifespan (years)");
    plot.scatter("ended", "#1f77b4", {{1960, 0.25}, {1990, 4.0}, {2010, 16.0}});
    plot.curve("moore", "#d62728", 1960, 2010, [](double t) { return std::exp2(-2 + 0.12 * (t - 1960)); });
    const auto s = plot.render();
    EXPECT_EQ(s.rfind("<?xml", 0), 0u);
    EXPECT_NE(s.find(svg::kGeneratorComment), std::string::npos);
    EXPECT_NE(s.find("Lifespan &lt;trend&gt;"), std::string::npos);
    EXPECT_NE(s.find("font-size=\"8\">-2</tspan>"), std::string::npos);
    EXPECT_NE(s.find("font-size=\"8\">4</tspan>"), std::string::npos);
    EXPECT_EQ(std::count(s.begin(), s.end(), '\n') > 10, true);
    EXPECT_NE(s.find("</svg>"), std::string::npos);
    EXPECT_EQ(plot.render(), s);
}

TEST(Svg, SecondaryAxisAndEmptyPlot) {
    svg::LogPlot plot("t", "x", "y");
    plot.line("count", "#999", {{1960, 0}, {1961, 50}}, true);
    plot.secondary_label("Ended per year");
    const auto s = plot.render();
    EXPECT_NE(s.find("Ended per year"), std::string::npos);
    EXPECT_NO_THROW(svg::LogPlot("e", "x", "y").render());
}

TEST(Report, MooreJsonCarriesDerivedQuantities) {
    const auto j = report::to_json(MooreFit::from_doubling(0.549, 12.17, 1957));
    EXPECT_NEAR(j.at("doubling_time_years").get<double>(), 12.17, 1e-12);
    EXPECT_NEAR(j.at("coefficient_years").get<double>(), 0.549, 1e-12);
    EXPECT_TRUE(j.at("fit_window").is_null());
    EXPECT_TRUE(report::to_json(MooreFit{}).at("doubling_time_years").is_null());
}

TEST(Report, WrightJsonAndRoundTrip) {
    const WrightFit w{1.143e-5, 2.528, 7};
    const auto j = report::to_json(w);
    EXPECT_NEAR(j.at("doubling_factor").get<double>(), std::exp2(2.528), 1e-12);
    EXPECT_NEAR(j.at("volume_increase_for_doubling").get<double>(), std::exp2(1 / 2.528) - 1, 1e-12);
    const auto back = report::wright_from_json(j);
    EXPECT_EQ(back.scale_b, w.scale_b);
    EXPECT_EQ(back.exponent_w, w.exponent_w);
    EXPECT_EQ(back.volume_offset, 7);
    EXPECT_TRUE(report::to_json(WrightFit{1.0, -0.2, 0}).at("volume_increase_for_doubling").is_null());

    const MooreFit m{1959, -4.6642, 0.13817};
    const auto mb = report::moore_from_json(report::to_json(m));
    EXPECT_EQ(mb.intercept_log2, m.intercept_log2);
    EXPECT_EQ(mb.slope_log2, m.slope_log2);
}

TEST(Report, AnnualCsv) {
    AnnualAggregate agg;
    agg.rows.push_back({1990, 2, 3.0, 2});
    agg.rows.push_back({1991, 0, std::nullopt, 2});
    std::ostringstream out;
    report::write_annual_csv(out, agg);
    EXPECT_EQ(out.str(), "year,ended_count,mean_lifespan,cumulative_ordinality\n1990,2,3,2\n1991,0,,2\n");
}

TEST(Csv, ShortestRoundTripFormatting) {
    for (double v : {0.1, 1.0 / 3.0, 2048.3841, 1e-300, 123456789.0}) {
        double back = 0;
        ASSERT_TRUE(csv::parse_double(csv::format_double(v), back));
        EXPECT_EQ(back, v);
    }
    EXPECT_EQ(csv::format_double(3.0), "3");
}
