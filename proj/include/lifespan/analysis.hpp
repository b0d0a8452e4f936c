#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lifespan/core.hpp"
#include "lifespan/error.hpp"
#include "lifespan/fitting.hpp"

namespace lifespan {

enum class Law { Moore, Wright };

constexpr std::string_view to_string(Law l) noexcept { return l == Law::Moore ? "moore" : "wright"; }

/// Drops operational craft and places every ended craft at the time its
/// lifespan ended. Records that carry no usable end (operational, excluded,
/// or a non-positive lifespan) are counted, never silently lost.
inline EndDatedSeries build_end_dated_series(std::span<const LifespanRecord> records) {
    EndDatedSeries out;
    for (const auto& r : records) {
        if (r.status == RecordStatus::Operational || (r.status == RecordStatus::Ended && !r.end)) {
            ++out.dropped_operational;
            continue;
        }
        if (r.status != RecordStatus::Ended) {
            ++out.dropped_excluded;
            continue;
        }
        const double life = lifespan_years(r.launch, *r.end);
        if (!(life > 0.0)) {
            ++out.dropped_nonpositive;
            continue;
        }
        out.points.push_back({to_decimal_year(*r.end), life, r.id});
    }
    std::sort(out.points.begin(), out.points.end(), [](const EndPoint& a, const EndPoint& b) {
        return a.end_time != b.end_time ? a.end_time < b.end_time : a.id < b.id;
    });
    return out;
}

struct VolumePoint {
    double end_time = 0.0;
    double lifespan = 0.0;
    std::string id;
    long ordinality = 0;  // 1-based rank in end-date order
    long volume = 0;      // ordinality + offset
};

struct VolumeSeries {
    std::vector<VolumePoint> points;
    int offset = 0;
};

/// Ranks the series in end-date order; the i-th craft stands for a cumulative
/// volume of i + offset (offset absorbs craft built before the first counted one).
inline VolumeSeries assign_ordinality(const EndDatedSeries& series, int offset) {
    if (offset < 0) throw Error(Errc::NegativeOffset, "ordinality offset must be >= 0");
    VolumeSeries out;
    out.offset = offset;
    out.points.reserve(series.size());
    long i = 0;
    for (const auto& p : series.points) {
        ++i;
        out.points.push_back({p.end_time, p.lifespan, p.id, i, i + offset});
    }
    return out;
}

inline std::vector<Sample> to_samples(const EndDatedSeries& s) {
    std::vector<Sample> out;
    out.reserve(s.size());
    double i = 0;
    for (const auto& p : s.points) out.push_back({p.end_time, ++i, p.lifespan});
    return out;
}

inline std::vector<Sample> to_samples(const VolumeSeries& s) {
    std::vector<Sample> out;
    out.reserve(s.points.size());
    for (const auto& p : s.points) out.push_back({p.end_time, static_cast<double>(p.ordinality), p.lifespan});
    return out;
}

struct AnnualRow {
    int year = 0;
    long ended_count = 0;
    std::optional<double> mean_lifespan;  // empty when nothing ended that year
    long cumulative_ordinality = 0;
};

struct AnnualAggregate {
    std::vector<AnnualRow> rows;
};

/// Per end-year counts and mean lifespans, with running cumulative count.
/// Years between the first and last end year with nothing ending are kept with
/// a zero count and no mean.
inline AnnualAggregate aggregate_annual(std::span<const LifespanRecord> records) {
    std::map<int, std::pair<long, double>> by_year;
    for (const auto& r : records) {
        const auto life = r.lifespan();
        if (!life) continue;
        auto& [count, sum] = by_year[r.end->year()];
        ++count;
        sum += *life;
    }
    AnnualAggregate out;
    if (by_year.empty()) return out;
    long cumulative = 0;
    for (int y = by_year.begin()->first; y <= by_year.rbegin()->first; ++y) {
        AnnualRow row{y, 0, std::nullopt, cumulative};
        if (auto it = by_year.find(y); it != by_year.end()) {
            row.ended_count = it->second.first;
            row.mean_lifespan = it->second.second / static_cast<double>(it->second.first);
        }
        cumulative += row.ended_count;
        row.cumulative_ordinality = cumulative;
        out.rows.push_back(row);
    }
    return out;
}

/// Samples for fitting an annual aggregate: one per year with a mean, at the
/// integer year, with the cumulative count as ordinality.
inline std::vector<Sample> to_samples(const AnnualAggregate& agg) {
    std::vector<Sample> out;
    for (const auto& r : agg.rows)
        if (r.mean_lifespan)
            out.push_back({static_cast<double>(r.year), static_cast<double>(r.cumulative_ordinality), *r.mean_lifespan});
    return out;
}

struct WindowPolicy {
    std::optional<int> moore_start_year;
    std::optional<int> wright_start_year;
    std::optional<int> end_year;

    std::optional<int> start_for(Law law) const { return law == Law::Moore ? moore_start_year : wright_start_year; }

    void validate() const {
        for (auto s : {moore_start_year, wright_start_year})
            if (s && end_year && *s > *end_year)
                throw Error(Errc::InvalidArgument, "window start " + std::to_string(*s) + " after end " +
                                                      std::to_string(*end_year));
    }
};

template <class T>
struct Windowed {
    T data;
    std::size_t trimmed = 0;
};

namespace detail {

inline bool in_window(double year, const WindowPolicy& policy, Law law) {
    if (auto s = policy.start_for(law); s && year < *s) return false;
    if (policy.end_year && std::floor(year) > *policy.end_year) return false;
    return true;
}

template <class T, class Pred>
std::size_t keep_if(std::vector<T>& v, Pred keep) {
    const auto before = v.size();
    std::erase_if(v, [&](const T& x) { return !keep(x); });
    return before - v.size();
}

inline void require_nonempty(std::size_t n) {
    if (n == 0) throw Error(Errc::EmptyAfterWindow, "no rows remain inside the fit window");
}

}  // namespace detail

/// Keeps rows whose year lies in the law's window. Values are untouched.
inline Windowed<EndDatedSeries> apply_window(EndDatedSeries series, const WindowPolicy& policy, Law law) {
    policy.validate();
    const auto trimmed = detail::keep_if(series.points, [&](const EndPoint& p) {
        return detail::in_window(p.end_time, policy, law);
    });
    detail::require_nonempty(series.size());
    return {std::move(series), trimmed};
}

inline Windowed<VolumeSeries> apply_window(VolumeSeries series, const WindowPolicy& policy, Law law) {
    policy.validate();
    const auto trimmed = detail::keep_if(series.points, [&](const VolumePoint& p) {
        return detail::in_window(p.end_time, policy, law);
    });
    detail::require_nonempty(series.points.size());
    return {std::move(series), trimmed};
}

inline Windowed<AnnualAggregate> apply_window(AnnualAggregate agg, const WindowPolicy& policy, Law law) {
    policy.validate();
    const auto trimmed = detail::keep_if(agg.rows, [&](const AnnualRow& r) {
        return detail::in_window(r.year, policy, law);
    });
    detail::require_nonempty(agg.rows.size());
    return {std::move(agg), trimmed};
}

enum class Winner { Moore, Wright, Tie };

constexpr std::string_view to_string(Winner w) noexcept {
    switch (w) {
    case Winner::Moore: return "moore";
    case Winner::Wright: return "wright";
    case Winner::Tie: return "tie";
    }
    return "tie";
}

struct ComparisonReport {
    double moore_rms = 0.0;
    double wright_rms = 0.0;
    ResidualSpace residual_space = ResidualSpace::Log2;
    std::size_t n_points = 0;
    Winner winner = Winner::Tie;
};

/// Relative tolerance under which two RMS values count as a tie. An absolute
/// floor keeps two interpolating models (both RMS ~ 1e-16) from being ranked.
inline constexpr double kTieRelTol = 1e-9;
inline constexpr double kTieAbsTol = 1e-12;

inline Winner pick_winner(double moore_rms, double wright_rms) {
    const double diff = std::abs(moore_rms - wright_rms);
    if (diff <= kTieRelTol * std::max(std::abs(moore_rms), std::abs(wright_rms)) + kTieAbsTol) return Winner::Tie;
    return moore_rms < wright_rms ? Winner::Moore : Winner::Wright;
}

/// Scores both models on the same samples. Fitted models carry the time range
/// they were fitted on; it must match the samples being compared.
inline ComparisonReport compare_models(std::span<const Sample> samples, const MooreFit& moore,
                                       const WrightFit& wright, ResidualSpace space) {
    std::vector<double> t;
    for (const auto& s : samples)
        if (s.lifespan > 0.0) t.push_back(s.time);
    if (t.empty()) throw Error(Errc::EmptySeries, "no positive-lifespan samples to compare");
    const YearRange range = detail::time_range(t);
    auto check = [&](const std::optional<YearRange>& w, std::string_view who) {
        if (!w) return;
        const double tol = 1e-9 * std::max(1.0, std::abs(range.end));
        if (std::abs(w->start - range.start) > tol || std::abs(w->end - range.end) > tol)
            throw Error(Errc::MismatchedSeries, std::string(who) + " fit window does not match the compared series");
    };
    check(moore.fit_window, "moore");
    check(wright.fit_window, "wright");

    ComparisonReport rep;
    rep.residual_space = space;
    rep.moore_rms = rms_error(samples, moore, space);
    rep.wright_rms = rms_error(samples, wright, space);
    rep.n_points = t.size();
    rep.winner = pick_winner(rep.moore_rms, rep.wright_rms);
    return rep;
}

/// Decimal year at which the Moore trend reaches `target_years`.
inline double year_for_lifespan(const MooreFit& fit, double target_years) {
    if (!(fit.slope_log2 > 0.0)) throw Error(Errc::NoGrowth, "Moore slope is not positive");
    if (!(target_years > 0.0)) throw Error(Errc::InvalidArgument, "target lifespan must be > 0");
    return fit.base_year + (std::log2(target_years) - fit.intercept_log2) / fit.slope_log2;
}

/// Ordinality (real-valued; round up for a count) at which the Wright trend
/// reaches `target_years`.
inline double volume_for_lifespan(const WrightFit& fit, double target_years) {
    if (!(fit.exponent_w > 0.0)) throw Error(Errc::NoGrowth, "Wright exponent is not positive");
    if (!(target_years > 0.0)) throw Error(Errc::InvalidArgument, "target lifespan must be > 0");
    return std::pow(target_years / fit.scale_b, 1.0 / fit.exponent_w) - fit.volume_offset;
}

}  // namespace lifespan
