#pragma once

#include <algorithm>
#include <charconv>
#include <chrono>
#include <compare>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "lifespan/error.hpp"

namespace lifespan {

/// Days per year used to turn day counts into lifespans in years.
/// 1/32 year at this rate is 11.414 days.
inline constexpr double kDaysPerYear = 365.25;

enum class Precision { Year, Month, Day };

/// A possibly coarse calendar date. Precision follows from which fields are
/// present, so a day without a month cannot be represented.
class CalendarDate {
public:
    CalendarDate() = default;

    static CalendarDate ymd(int y, int m, int d) {
        namespace chr = std::chrono;
        if (!chr::year_month_day{chr::year{y}, chr::month{static_cast<unsigned>(m)}, chr::day{static_cast<unsigned>(d)}}.ok())
            throw Error(Errc::InvalidDate, std::to_string(y) + "-" + std::to_string(m) + "-" + std::to_string(d));
        return CalendarDate(y, m, d);
    }
    static CalendarDate ym(int y, int m) {
        if (m < 1 || m > 12)
            throw Error(Errc::InvalidDate, std::to_string(y) + "-" + std::to_string(m));
        return CalendarDate(y, m, std::nullopt);
    }
    static CalendarDate y(int year) { return CalendarDate(year, std::nullopt, std::nullopt); }

    int year() const noexcept { return year_; }
    std::optional<int> month() const noexcept { return month_; }
    std::optional<int> day() const noexcept { return day_; }

    Precision precision() const noexcept {
        if (day_) return Precision::Day;
        if (month_) return Precision::Month;
        return Precision::Year;
    }

    /// Same date truncated to `p` (never refines).
    CalendarDate truncated(Precision p) const {
        CalendarDate out = *this;
        if (p == Precision::Year) out.month_.reset();
        if (p != Precision::Day) out.day_.reset();
        return out;
    }

    /// ISO-like rendering: "2014", "2014-11", "2014-11-03".
    std::string to_string() const {
        std::string s = std::to_string(year_);
        auto two = [](int v) { return (v < 10 ? "-0" : "-") + std::to_string(v); };
        if (month_) s += two(*month_);
        if (day_) s += two(*day_);
        return s;
    }

    friend bool operator==(const CalendarDate&, const CalendarDate&) = default;

private:
    CalendarDate(int y, std::optional<int> m, std::optional<int> d) : year_(y), month_(m), day_(d) {}

    int year_ = 1970;
    std::optional<int> month_;
    std::optional<int> day_;
};

namespace detail {

inline std::chrono::sys_days to_sys_days(int y, int m, int d) {
    using namespace std::chrono;
    return sys_days{std::chrono::year{y} / month{static_cast<unsigned>(m)} / day{static_cast<unsigned>(d)}};
}

inline bool parse_int(std::string_view s, int& out) {
    if (s.empty()) return false;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc{} && p == s.data() + s.size();
}

}  // namespace detail

inline bool is_leap_year(int y) noexcept { return std::chrono::year{y}.is_leap(); }

/// Parses "YYYY", "YYYY-MM", "YYYY-MM-DD". A "?" (or "??") component marks an
/// unknown month or day, e.g. "2014-11-?" is month precision.
inline CalendarDate parse_date(std::string_view text) {
    auto trim = [](std::string_view s) {
        while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
        while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
        return s;
    };
    text = trim(text);
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
        auto dash = text.find('-', start);
        parts.push_back(text.substr(start, dash == std::string_view::npos ? std::string_view::npos : dash - start));
        if (dash == std::string_view::npos) break;
        start = dash + 1;
    }
    auto unknown = [](std::string_view p) { return !p.empty() && p.find_first_not_of('?') == std::string_view::npos; };
    auto bad = [&] { return Error(Errc::InvalidDate, "cannot parse date '" + std::string(text) + "'"); };

    if (parts.empty() || parts.size() > 3) throw bad();
    int y = 0;
    if (parts[0].size() != 4 || !detail::parse_int(parts[0], y)) throw bad();
    if (parts.size() == 1 || unknown(parts[1])) {
        if (parts.size() == 3 && !unknown(parts[2])) throw bad();
        return CalendarDate::y(y);
    }
    int m = 0;
    if (!detail::parse_int(parts[1], m)) throw bad();
    if (parts.size() == 2 || unknown(parts[2])) return CalendarDate::ym(y, m);
    int d = 0;
    if (!detail::parse_int(parts[2], d)) throw bad();
    return CalendarDate::ymd(y, m, d);
}

/// Year plus elapsed fraction of that year. Month precision is taken as the
/// 15th of the month; year precision as mid-year.
inline double to_decimal_year(const CalendarDate& d) {
    switch (d.precision()) {
    case Precision::Year:
        return d.year() + 0.5;
    case Precision::Month:
    case Precision::Day: {
        const int day = d.day().value_or(15);
        const auto jan1 = detail::to_sys_days(d.year(), 1, 1);
        const auto doy0 = (detail::to_sys_days(d.year(), *d.month(), day) - jan1).count();
        return d.year() + static_cast<double>(doy0) / (is_leap_year(d.year()) ? 366.0 : 365.0);
    }
    }
    return d.year();
}

/// Lifespan in years between two dates.
///
/// Day precision on both ends gives the exact day count over 365.25. If either
/// end is year precision the result is the integer year difference. A month
/// precision end resolves to the first of its month, the same start-of-period
/// convention the integer year difference applies to years. Ends that coincide
/// at the shared precision but would otherwise invert (e.g. launch 2014-11-20,
/// end "2014-11") give zero.
inline double lifespan_years(const CalendarDate& launch, const CalendarDate& end) {
    const Precision shared = std::min(launch.precision(), end.precision());
    auto key = [&](const CalendarDate& d) {
        const auto t = d.truncated(shared);
        return std::tuple{t.year(), t.month().value_or(0), t.day().value_or(0)};
    };
    if (key(end) < key(launch))
        throw Error(Errc::NegativeLifespan, "end " + end.to_string() + " precedes launch " + launch.to_string());
    if (shared == Precision::Year) return static_cast<double>(end.year() - launch.year());

    auto days = [](const CalendarDate& d) { return detail::to_sys_days(d.year(), *d.month(), d.day().value_or(1)); };
    const auto span = (days(end) - days(launch)).count();
    return std::max(0.0, static_cast<double>(span) / kDaysPerYear);
}

enum class RecordStatus { Operational, Ended, ExcludedInOrbit, ExcludedNoStatusDate };
enum class RecordSource { MissionList, Satcat };

constexpr std::string_view to_string(RecordStatus s) noexcept {
    switch (s) {
    case RecordStatus::Operational: return "Operational";
    case RecordStatus::Ended: return "Ended";
    case RecordStatus::ExcludedInOrbit: return "ExcludedInOrbit";
    case RecordStatus::ExcludedNoStatusDate: return "ExcludedNoStatusDate";
    }
    return "Unknown";
}

inline std::optional<RecordStatus> parse_record_status(std::string_view s) {
    for (auto st : {RecordStatus::Operational, RecordStatus::Ended, RecordStatus::ExcludedInOrbit,
                    RecordStatus::ExcludedNoStatusDate})
        if (to_string(st) == s) return st;
    return std::nullopt;
}

struct LifespanRecord {
    std::string id;
    std::string name;
    std::optional<std::string> operator_name;
    CalendarDate launch;
    std::optional<CalendarDate> end;
    RecordStatus status = RecordStatus::Operational;
    RecordSource source = RecordSource::MissionList;

    /// Lifespan in years, or nothing while the craft is still operating.
    std::optional<double> lifespan() const {
        if (!end || status != RecordStatus::Ended) return std::nullopt;
        return lifespan_years(launch, *end);
    }
};

/// One ended craft placed at the time its lifespan ended.
struct EndPoint {
    double end_time = 0.0;
    double lifespan = 0.0;
    std::string id;
};

/// Points sorted by end time, ties broken by id. Lifespans are strictly positive.
struct EndDatedSeries {
    std::vector<EndPoint> points;
    std::size_t dropped_operational = 0;
    std::size_t dropped_nonpositive = 0;
    std::size_t dropped_excluded = 0;

    std::size_t size() const noexcept { return points.size(); }
    bool empty() const noexcept { return points.empty(); }
};

}  // namespace lifespan
