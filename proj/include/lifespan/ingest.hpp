#pragma once

#include <algorithm>
#include <cctype>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "lifespan/core.hpp"
#include "lifespan/csv.hpp"
#include "lifespan/error.hpp"

namespace lifespan {

// ---------------------------------------------------------------------------
// SATCAT fixed-width catalog

enum class StatusClass { InOrbit, Reentered, OtherEnded };

constexpr std::string_view to_string(StatusClass s) noexcept {
    switch (s) {
    case StatusClass::InOrbit: return "InOrbit";
    case StatusClass::Reentered: return "Reentered";
    case StatusClass::OtherEnded: return "OtherEnded";
    }
    return "OtherEnded";
}

inline std::optional<StatusClass> parse_status_class(std::string_view s) {
    for (auto c : {StatusClass::InOrbit, StatusClass::Reentered, StatusClass::OtherEnded})
        if (to_string(c) == s) return c;
    return std::nullopt;
}

struct ColumnField {
    std::string name;
    int start = 1;  // 1-based, inclusive
    int end = 1;
    bool required = false;
};

/// Column layout and status taxonomy of one catalog revision. Loaded from a
/// config file so a new catalog layout is a data change.
struct SatcatColumnSpec {
    std::string version;
    std::vector<ColumnField> fields;
    std::map<std::string, StatusClass> status_map;
    std::optional<StatusClass> default_status_class;

    static constexpr std::string_view kRequired[] = {"catalog_id", "launch_date", "status", "status_date"};

    const ColumnField* field(std::string_view name) const {
        for (const auto& f : fields)
            if (f.name == name) return &f;
        return nullptr;
    }

    void validate() const {
        for (auto name : kRequired)
            if (!field(name)) throw Error(Errc::SpecMismatch, "column spec lacks field '" + std::string(name) + "'");
        int last_end = 0;
        for (const auto& f : fields) {
            if (f.start < 1 || f.end < f.start)
                throw Error(Errc::SpecMismatch, "bad column range for '" + f.name + "'");
            if (f.start <= last_end)
                throw Error(Errc::SpecMismatch, "column ranges overlap or are out of order at '" + f.name + "'");
            last_end = f.end;
        }
    }

    static SatcatColumnSpec from_json(const nlohmann::json& j) {
        SatcatColumnSpec spec;
        try {
            spec.version = j.value("version", "");
            for (const auto& c : j.at("columns"))
                spec.fields.push_back({c.at("name").get<std::string>(), c.at("start").get<int>(),
                                       c.at("end").get<int>(), c.value("required", false)});
            for (const auto& [raw, cls] : j.at("status_map").items()) {
                auto parsed = parse_status_class(cls.get<std::string>());
                if (!parsed) throw Error(Errc::SpecMismatch, "unknown status class '" + cls.get<std::string>() + "'");
                spec.status_map[raw] = *parsed;
            }
            if (j.contains("default_status_class")) {
                auto parsed = parse_status_class(j.at("default_status_class").get<std::string>());
                if (!parsed) throw Error(Errc::SpecMismatch, "unknown default status class");
                spec.default_status_class = parsed;
            }
        } catch (const nlohmann::json::exception& e) {
            throw Error(Errc::SpecMismatch, std::string("malformed column spec: ") + e.what());
        }
        spec.validate();
        return spec;
    }

    static SatcatColumnSpec load(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw Error(Errc::Io, "cannot open column spec '" + path + "'");
        nlohmann::json j;
        try {
            in >> j;
        } catch (const nlohmann::json::exception& e) {
            throw Error(Errc::SpecMismatch, "column spec '" + path + "' is not valid JSON: " + e.what());
        }
        return from_json(j);
    }
};

struct SatcatRecord {
    std::string catalog_id;
    std::string name;
    std::string owner;
    CalendarDate launch_date;
    std::string current_status;
    StatusClass status_class = StatusClass::InOrbit;
    std::optional<CalendarDate> date_of_status;
};

struct Reject {
    long line = 0;
    std::string reason;
};

struct SatcatParse {
    std::vector<SatcatRecord> records;
    std::vector<Reject> rejects;
    std::size_t data_lines = 0;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

inline std::optional<int> month_from_abbrev(std::string_view m) {
    static constexpr std::string_view names[] = {"jan", "feb", "mar", "apr", "may", "jun",
                                                 "jul", "aug", "sep", "oct", "nov", "dec"};
    if (m.size() < 3) return std::nullopt;
    std::string lower;
    for (char c : m.substr(0, 3)) lower += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    for (int i = 0; i < 12; ++i)
        if (names[i] == lower) return i + 1;
    return std::nullopt;
}

}  // namespace detail

/// Parses catalog dates such as "1957 Oct  4", "1957 Oct  4 1928:34",
/// "1958 Jan 4?", "1962 Mar" and "1962". Uncertainty marks are dropped.
inline CalendarDate parse_satcat_date(std::string_view text) {
    std::istringstream ss{std::string(detail::trim(text))};
    std::string ys, ms, ds;
    ss >> ys >> ms >> ds;
    auto strip = [](std::string& s) { std::erase(s, '?'); };
    strip(ys);
    strip(ms);
    strip(ds);
    int y = 0;
    if (ys.size() != 4 || !detail::parse_int(ys, y)) throw Error(Errc::InvalidDate, "bad catalog date '" + std::string(text) + "'");
    if (ms.empty()) return CalendarDate::y(y);
    auto m = detail::month_from_abbrev(ms);
    if (!m) throw Error(Errc::InvalidDate, "bad catalog month in '" + std::string(text) + "'");
    if (ds.empty()) return CalendarDate::ym(y, *m);
    if (auto dot = ds.find('.'); dot != std::string::npos) ds.resize(dot);
    int d = 0;
    if (!detail::parse_int(ds, d)) throw Error(Errc::InvalidDate, "bad catalog day in '" + std::string(text) + "'");
    return CalendarDate::ymd(y, *m, d);
}

/// Rejected lines above this fraction of data lines signal a wrong column spec.
inline constexpr double kMaxRejectFraction = 0.10;

/// One record per data line; blank lines and '#' comments are skipped.
/// Malformed lines are collected with their line numbers. Truncated lines keep
/// a record when only optional columns are missing.
inline SatcatParse parse_satcat(std::istream& in, const SatcatColumnSpec& spec) {
    spec.validate();
    SatcatParse out;
    std::string line;
    long lineno = 0;
    std::set<std::string> seen;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (detail::trim(line).empty() || line.front() == '#') continue;
        ++out.data_lines;

        auto column = [&](const ColumnField& f) -> std::optional<std::string_view> {
            const auto start = static_cast<std::size_t>(f.start - 1);
            if (line.size() <= start) return std::nullopt;
            const auto len = std::min<std::size_t>(static_cast<std::size_t>(f.end - f.start + 1), line.size() - start);
            auto v = detail::trim(std::string_view(line).substr(start, len));
            if (v.empty()) return std::nullopt;
            return v;
        };
        auto reject = [&](std::string reason) { out.rejects.push_back({lineno, std::move(reason)}); };

        std::map<std::string, std::string_view> values;
        std::string missing;
        for (const auto& f : spec.fields) {
            auto v = column(f);
            if (v) values[f.name] = *v;
            else if (f.required) missing = f.name;
        }
        if (!missing.empty()) {
            reject("missing required field '" + missing + "'");
            continue;
        }
        if (!values.count("catalog_id") || !values.count("launch_date") || !values.count("status")) {
            reject("missing catalog id, launch date or status");
            continue;
        }

        SatcatRecord rec;
        rec.catalog_id = values["catalog_id"];
        if (values.count("name")) rec.name = values["name"];
        if (values.count("owner")) rec.owner = values["owner"];
        rec.current_status = values["status"];
        try {
            rec.launch_date = parse_satcat_date(values["launch_date"]);
            if (values.count("status_date")) rec.date_of_status = parse_satcat_date(values["status_date"]);
        } catch (const Error& e) {
            reject(e.what());
            continue;
        }
        if (auto it = spec.status_map.find(rec.current_status); it != spec.status_map.end()) {
            rec.status_class = it->second;
        } else if (spec.default_status_class) {
            rec.status_class = *spec.default_status_class;
        } else {
            reject("unknown status '" + rec.current_status + "'");
            continue;
        }
        if (rec.date_of_status && rec.date_of_status->year() < rec.launch_date.year()) {
            reject("status date precedes launch date");
            continue;
        }
        if (!seen.insert(rec.catalog_id).second) {
            reject("duplicate catalog id '" + rec.catalog_id + "'");
            continue;
        }
        out.records.push_back(std::move(rec));
    }
    if (in.bad()) throw Error(Errc::Io, "read error while parsing catalog");
    if (out.data_lines > 0 &&
        static_cast<double>(out.rejects.size()) > kMaxRejectFraction * static_cast<double>(out.data_lines))
        throw Error(Errc::SpecMismatch, std::to_string(out.rejects.size()) + " of " + std::to_string(out.data_lines) +
                                            " lines rejected; column spec probably does not match the file");
    return out;
}

inline void write_rejects_csv(std::ostream& out, std::span<const Reject> rejects) {
    csv::write_row(out, {"line", "reason"});
    for (const auto& r : rejects) csv::write_row(out, {std::to_string(r.line), r.reason});
}

struct StatusBreakdown {
    std::size_t total = 0;
    std::size_t in_orbit = 0;
    std::size_t reentered = 0;
    std::size_t other_ended = 0;
    std::size_t missing_status_date = 0;  // ended class but no status date
    std::size_t kept = 0;
    std::map<std::string, std::size_t> by_raw_status;

    std::size_t excluded() const noexcept { return in_orbit + missing_status_date; }
    double fraction(std::size_t n) const noexcept {
        return total ? static_cast<double>(n) / static_cast<double>(total) : 0.0;
    }
    double in_orbit_fraction() const noexcept { return fraction(in_orbit); }
    double reentered_fraction() const noexcept { return fraction(reentered); }
    double kept_fraction() const noexcept { return fraction(kept); }
};

struct SatelliteLifespans {
    std::vector<LifespanRecord> kept;
    std::vector<LifespanRecord> excluded;
    StatusBreakdown stats;
};

/// Keeps satellites whose status is not "in orbit" and that carry a status
/// date; the status year stands in for the end of life and the lifespan is the
/// integer year difference. Excluded satellites are returned with their reason.
inline SatelliteLifespans filter_satellite_lifespans(std::span<const SatcatRecord> records) {
    SatelliteLifespans out;
    for (const auto& r : records) {
        ++out.stats.total;
        ++out.stats.by_raw_status[r.current_status];
        LifespanRecord lr;
        lr.id = r.catalog_id;
        lr.name = r.name;
        if (!r.owner.empty()) lr.operator_name = r.owner;
        lr.launch = CalendarDate::y(r.launch_date.year());
        lr.source = RecordSource::Satcat;
        switch (r.status_class) {
        case StatusClass::InOrbit: ++out.stats.in_orbit; break;
        case StatusClass::Reentered: ++out.stats.reentered; break;
        case StatusClass::OtherEnded: ++out.stats.other_ended; break;
        }
        if (r.status_class == StatusClass::InOrbit) {
            lr.status = RecordStatus::ExcludedInOrbit;
            out.excluded.push_back(std::move(lr));
        } else if (!r.date_of_status) {
            ++out.stats.missing_status_date;
            lr.status = RecordStatus::ExcludedNoStatusDate;
            out.excluded.push_back(std::move(lr));
        } else {
            ++out.stats.kept;
            lr.status = RecordStatus::Ended;
            lr.end = CalendarDate::y(r.date_of_status->year());
            out.kept.push_back(std::move(lr));
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Mission list CSV: id,name,operator,launch_date,end_date,notes

namespace detail {

inline std::map<std::string, std::size_t> header_index(const std::vector<std::string>& header) {
    std::map<std::string, std::size_t> idx;
    for (std::size_t i = 0; i < header.size(); ++i) {
        std::string h(trim(header[i]));
        if (i == 0 && h.starts_with("\xEF\xBB\xBF")) h.erase(0, 3);
        idx[h] = i;
    }
    return idx;
}

}  // namespace detail

inline std::vector<LifespanRecord> load_mission_csv(std::istream& in) {
    std::vector<std::string> row;
    int consumed = 0;
    long lineno = 0;
    if (!csv::read_row(in, row, consumed)) return {};
    lineno += consumed;
    const auto idx = detail::header_index(row);
    for (auto col : {"id", "name", "operator", "launch_date", "end_date"})
        if (!idx.count(col))
            throw Error(Errc::MalformedRow, std::string("mission CSV header lacks column '") + col + "'");

    std::vector<LifespanRecord> out;
    std::set<std::string> ids;
    while (csv::read_row(in, row, consumed)) {
        const long rowline = lineno + 1;
        lineno += consumed;
        if (row.size() == 1 && detail::trim(row[0]).empty()) continue;
        auto bad = [&](const std::string& why) {
            return Error(Errc::MalformedRow, "line " + std::to_string(rowline) + ": " + why);
        };
        auto get = [&](const char* col) -> std::string {
            const auto i = idx.at(col);
            return i < row.size() ? std::string(detail::trim(row[i])) : std::string();
        };
        LifespanRecord r;
        r.source = RecordSource::MissionList;
        r.id = get("id");
        r.name = get("name");
        if (r.id.empty()) throw bad("empty id");
        if (auto op = get("operator"); !op.empty()) r.operator_name = op;
        try {
            r.launch = parse_date(get("launch_date"));
            if (auto e = get("end_date"); !e.empty()) r.end = parse_date(e);
            r.status = r.end ? RecordStatus::Ended : RecordStatus::Operational;
            if (r.end) lifespan_years(r.launch, *r.end);
        } catch (const Error& e) {
            throw bad(e.what());
        }
        if (!ids.insert(r.id).second)
            throw Error(Errc::DuplicateId, "line " + std::to_string(rowline) + ": duplicate id '" + r.id + "'");
        out.push_back(std::move(r));
    }
    if (in.bad()) throw Error(Errc::Io, "read error while loading mission CSV");
    return out;
}

inline std::vector<LifespanRecord> load_mission_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(Errc::Io, "cannot open '" + path + "'");
    return load_mission_csv(in);
}

/// Case-insensitive substring match on the operator; an empty pattern keeps all.
inline std::vector<LifespanRecord> filter_by_operator(std::span<const LifespanRecord> records,
                                                      std::string_view pattern) {
    auto lower = [](std::string_view s) {
        std::string o(s);
        for (auto& c : o) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        return o;
    };
    const std::string needle = lower(pattern);
    std::vector<LifespanRecord> out;
    for (const auto& r : records)
        if (needle.empty() || (r.operator_name && lower(*r.operator_name).find(needle) != std::string::npos))
            out.push_back(r);
    return out;
}

// ---------------------------------------------------------------------------
// Normalized records CSV

inline constexpr std::string_view kRecordsHeader =
    "id,name,operator,launch,end,status,lifespan_years,end_decimal_year";

inline void write_records_csv(std::ostream& out, std::span<const LifespanRecord> records) {
    out << kRecordsHeader << '\n';
    for (const auto& r : records) {
        const auto life = r.lifespan();
        csv::write_row(out, {r.id, r.name, r.operator_name.value_or(""), r.launch.to_string(),
                             r.end ? r.end->to_string() : "", std::string(to_string(r.status)),
                             life ? csv::format_double(*life) : "",
                             r.end ? csv::format_double(to_decimal_year(*r.end)) : ""});
    }
}

inline std::vector<LifespanRecord> read_records_csv(std::istream& in, RecordSource source) {
    std::vector<std::string> row;
    int consumed = 0;
    long lineno = 0;
    if (!csv::read_row(in, row, consumed)) return {};
    lineno += consumed;
    const auto idx = detail::header_index(row);
    for (auto col : {"id", "name", "operator", "launch", "end", "status"})
        if (!idx.count(col)) throw Error(Errc::MalformedRow, std::string("records CSV lacks column '") + col + "'");
    std::vector<LifespanRecord> out;
    std::set<std::string> ids;
    while (csv::read_row(in, row, consumed)) {
        const long rowline = lineno + 1;
        lineno += consumed;
        if (row.size() == 1 && detail::trim(row[0]).empty()) continue;
        auto get = [&](const char* col) -> std::string {
            const auto i = idx.at(col);
            return i < row.size() ? row[i] : std::string();
        };
        LifespanRecord r;
        r.source = source;
        r.id = get("id");
        r.name = get("name");
        if (auto op = get("operator"); !op.empty()) r.operator_name = op;
        auto status = parse_record_status(get("status"));
        if (!status)
            throw Error(Errc::MalformedRow, "line " + std::to_string(rowline) + ": bad status '" + get("status") + "'");
        r.status = *status;
        try {
            r.launch = parse_date(get("launch"));
            if (auto e = get("end"); !e.empty()) r.end = parse_date(e);
            if (r.end) lifespan_years(r.launch, *r.end);
        } catch (const Error& e) {
            throw Error(Errc::MalformedRow, "line " + std::to_string(rowline) + ": " + e.what());
        }
        if (!ids.insert(r.id).second)
            throw Error(Errc::DuplicateId, "line " + std::to_string(rowline) + ": duplicate id '" + r.id + "'");
        out.push_back(std::move(r));
    }
    return out;
}

}  // namespace lifespan
