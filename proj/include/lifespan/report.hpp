#pragma once

#include <optional>
#include <string>

#include "json.hpp"
#include "lifespan/analysis.hpp"
#include "lifespan/bias_sim.hpp"
#include "lifespan/fitting.hpp"
#include "lifespan/ingest.hpp"

namespace lifespan::report {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

inline Json window_json(const std::optional<YearRange>& w) {
    if (!w) return nullptr;
    return Json{{"start", w->start}, {"end", w->end}};
}

inline Json doubling_json(const DoublingTime& d) {
    if (d.no_trend()) return nullptr;
    return *d.years;
}

inline Json diagnostics_json(const FitDiagnostics& d) {
    return Json{{"n_points", d.n_points},
                {"n_excluded_nonpositive", d.n_excluded_nonpositive},
                {"rms_log2", d.rms_log2},
                {"rms_linear_years", d.rms_linear},
                {"gauss_newton_iterations", d.iterations},
                {"fell_back_to_log2", d.fell_back_to_log2}};
}

inline Json to_json(const MooreFit& m) {
    const auto dt = doubling_time(m);
    return Json{{"base_year", m.base_year},
                {"intercept_log2", m.intercept_log2},
                {"slope_log2", m.slope_log2},
                {"coefficient_years", std::exp2(m.intercept_log2)},
                {"doubling_time_years", doubling_json(dt)},
                {"declining", dt.declining()},
                {"fit_window", window_json(m.fit_window)},
                {"residual_space", to_string(m.residual_space)}};
}

inline Json to_json(const WrightFit& w) {
    Json j{{"scale_b", w.scale_b},
           {"exponent_w", w.exponent_w},
           {"volume_offset", w.volume_offset},
           {"doubling_factor", wright_doubling_factor(w.exponent_w)},
           {"volume_increase_for_doubling", nullptr},
           {"fit_window", window_json(w.fit_window)},
           {"residual_space", to_string(w.residual_space)}};
    if (w.exponent_w > 0.0) j["volume_increase_for_doubling"] = wright_volume_increase_for_doubling(w.exponent_w);
    return j;
}

inline MooreFit moore_from_json(const Json& j) {
    MooreFit m;
    m.base_year = j.at("base_year").get<double>();
    m.intercept_log2 = j.at("intercept_log2").get<double>();
    m.slope_log2 = j.at("slope_log2").get<double>();
    return m;
}

inline WrightFit wright_from_json(const Json& j) {
    WrightFit w;
    w.scale_b = j.at("scale_b").get<double>();
    w.exponent_w = j.at("exponent_w").get<double>();
    w.volume_offset = j.at("volume_offset").get<int>();
    return w;
}

inline Json to_json(const ComparisonReport& c) {
    return Json{{"residual_space", to_string(c.residual_space)},
                {"n_points", c.n_points},
                {"moore_rms", c.moore_rms},
                {"wright_rms", c.wright_rms},
                {"winner", to_string(c.winner)}};
}

inline Json to_json(const StatusBreakdown& s) {
    Json raw = Json::object();
    for (const auto& [k, v] : s.by_raw_status) raw[k] = v;
    return Json{{"total", s.total},
                {"in_orbit", s.in_orbit},
                {"reentered", s.reentered},
                {"other_ended", s.other_ended},
                {"missing_status_date", s.missing_status_date},
                {"kept", s.kept},
                {"excluded", s.excluded()},
                {"in_orbit_fraction", s.in_orbit_fraction()},
                {"reentered_fraction", s.reentered_fraction()},
                {"kept_fraction", s.kept_fraction()},
                {"by_raw_status", raw}};
}

inline Json to_json(const SlopeSummary& s) { return Json{{"q05", s.q05}, {"median", s.median}, {"q95", s.q95}}; }

inline Json to_json(const BiasReport& r) {
    const auto& sc = r.scenario;
    Json seeds = Json::array();
    for (const auto& s : r.seeds) {
        seeds.push_back(Json{{"seed", s.seed},
                             {"fleet_size", s.fleet_size},
                             {"operational", s.operational},
                             {"launch_binned_slope", s.launch_binned_slope ? Json(*s.launch_binned_slope) : Json(nullptr)},
                             {"end_binned_slope", s.end_binned_slope ? Json(*s.end_binned_slope) : Json(nullptr)}});
    }
    return Json{{"schema_version", kSchemaVersion},
                {"kind", "bias_report"},
                {"scenario",
                 {{"true_intercept_log2", sc.true_intercept_log2},
                  {"true_slope_log2", sc.true_slope_log2},
                  {"launches_per_year", sc.launches_per_year},
                  {"start_year", sc.start_year},
                  {"observation_year", sc.observation_year},
                  {"lifespan_noise_sigma_log2", sc.lifespan_noise_sigma_log2},
                  {"seed", sc.seed}}},
                {"n_seeds", r.n_seeds},
                {"failed_seeds", r.failed_seeds},
                {"true_slope", r.true_slope()},
                {"launch_binned_below_true", r.launch_below_true},
                {"launch_binned_below_true_fraction", r.launch_below_true_fraction()},
                {"launch_binned", r.launch_binned ? to_json(*r.launch_binned) : Json(nullptr)},
                {"end_binned", r.end_binned ? to_json(*r.end_binned) : Json(nullptr)},
                {"seeds", seeds}};
}

inline void write_annual_csv(std::ostream& out, const AnnualAggregate& agg) {
    out << "year,ended_count,mean_lifespan,cumulative_ordinality\n";
    for (const auto& r : agg.rows)
        out << r.year << ',' << r.ended_count << ',' << (r.mean_lifespan ? csv::format_double(*r.mean_lifespan) : "")
            << ',' << r.cumulative_ordinality << '\n';
}

}  // namespace lifespan::report
