// lifespan: command-line front end for the lifespan trend library.
//
//   lifespan ingest        --input FILE --kind mission|satcat [--spec COLUMNS.json] --out-dir DIR
//   lifespan fit           --input RECORDS.csv --kind mission|satcat [--law ...] --out-dir DIR
//   lifespan compare       --input RECORDS.csv --kind mission|satcat --out-dir DIR
//   lifespan forecast      --target-lifespan YEARS (--fit-report F | --input F | --coefficient ...)
//   lifespan simulate-bias --seed N --n-seeds N --out-dir DIR
//
// Exit codes: 0 ok, 1 I/O, 2 parse/column-spec/usage, 3 insufficient data, 4 no growth.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "lifespan/analysis.hpp"
#include "lifespan/bias_sim.hpp"
#include "lifespan/fitting.hpp"
#include "lifespan/ingest.hpp"
#include "lifespan/report.hpp"
#include "lifespan/svg.hpp"

namespace fs = std::filesystem;
using namespace lifespan;
using report::Json;

namespace {

enum ExitCode { kOk = 0, kIo = 1, kParse = 2, kInsufficient = 3, kNoGrowth = 4 };

int exit_code_for(Errc e) {
    switch (e) {
    case Errc::Io: return kIo;
    case Errc::InsufficientData:
    case Errc::DegenerateAbscissa:
    case Errc::EmptySeries:
    case Errc::EmptyAfterWindow: return kInsufficient;
    case Errc::NoGrowth: return kNoGrowth;
    default: return kParse;
    }
}

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    std::string input;
    std::string kind = "mission";
    std::string spec;
    std::string out_dir = ".";
    std::vector<std::string> formats{"json"};
    std::string law = "both";
    std::string residual_space = "log2";
    std::string operator_pattern;
    std::optional<double> base_year;
    std::optional<int> window_start;
    std::optional<int> window_end;
    std::optional<int> moore_window_start;
    std::optional<int> wright_window_start;
    std::optional<int> offset;

    // forecast
    std::optional<double> target_lifespan;
    std::string fit_report;
    std::optional<double> coefficient;
    std::optional<double> doubling_period;
    std::optional<double> scale_b;
    std::optional<double> exponent;

    // simulate-bias
    std::uint64_t seed = 1;
    long n_seeds = 100;
    FleetScenario scenario;
    unsigned threads = 0;
};

bool is_satcat(const Options& o) { return o.kind == "satcat"; }

ResidualSpace residual_space(const Options& o) {
    return o.residual_space == "linear" ? ResidualSpace::Linear : ResidualSpace::Log2;
}

bool wants(const Options& o, const std::string& fmt) {
    return std::find(o.formats.begin(), o.formats.end(), fmt) != o.formats.end();
}

fs::path out_path(const Options& o, const std::string& name) {
    std::error_code ec;
    fs::create_directories(o.out_dir, ec);
    if (ec) throw Error(Errc::Io, "cannot create output directory '" + o.out_dir + "'");
    return fs::path(o.out_dir) / name;
}

void write_file(const fs::path& p, const std::string& content) {
    std::ofstream out(p, std::ios::binary);
    if (!out) throw Error(Errc::Io, "cannot write '" + p.string() + "'");
    out << content;
    if (!out) throw Error(Errc::Io, "write failed for '" + p.string() + "'");
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::ifstream open_input(const std::string& path) {
    if (path.empty()) throw UsageError("--input is required");
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(Errc::Io, "cannot open '" + path + "'");
    return in;
}

// ---------------------------------------------------------------------------

int cmd_ingest(const Options& o) {
    auto in = open_input(o.input);
    std::vector<LifespanRecord> records;
    std::vector<Reject> rejects;
    Json stats;
    if (is_satcat(o)) {
        if (o.spec.empty()) throw UsageError("--spec is required for --kind satcat");
        const auto spec = SatcatColumnSpec::load(o.spec);
        const auto parsed = parse_satcat(in, spec);
        rejects = parsed.rejects;
        auto filtered = filter_satellite_lifespans(parsed.records);
        stats = report::to_json(filtered.stats);
        stats["data_lines"] = parsed.data_lines;
        stats["rejected_lines"] = rejects.size();
        records = std::move(filtered.kept);
        records.insert(records.end(), filtered.excluded.begin(), filtered.excluded.end());
    } else {
        records = load_mission_csv(in);
        std::size_t operational = 0;
        for (const auto& r : records) operational += r.status == RecordStatus::Operational;
        stats = Json{{"total", records.size()}, {"operational", operational}, {"ended", records.size() - operational}};
    }
    if (records.empty()) std::cerr << "warning: no records in '" << o.input << "'\n";

    std::ostringstream rec_csv, rej_csv;
    write_records_csv(rec_csv, records);
    write_rejects_csv(rej_csv, rejects);
    write_file(out_path(o, "records.csv"), rec_csv.str());
    write_file(out_path(o, "rejects.csv"), rej_csv.str());
    Json j{{"schema_version", report::kSchemaVersion}, {"kind", "ingest_stats"}, {"dataset_kind", o.kind}, {"stats", stats}};
    write_file(out_path(o, "ingest_stats.json"), dump(j));
    std::cout << "ingested " << records.size() << " records (" << rejects.size() << " rejected lines) into "
              << o.out_dir << "\n";
    return kOk;
}

// ---------------------------------------------------------------------------

std::vector<LifespanRecord> load_dataset(const Options& o) {
    auto in = open_input(o.input);
    std::string first;
    std::getline(in, first);
    if (!first.empty() && first.back() == '\r') first.pop_back();
    in.clear();
    in.seekg(0);
    const auto source = is_satcat(o) ? RecordSource::Satcat : RecordSource::MissionList;
    auto records = first == kRecordsHeader ? read_records_csv(in, source) : load_mission_csv(in);
    if (!o.operator_pattern.empty()) records = filter_by_operator(records, o.operator_pattern);
    return records;
}

WindowPolicy window_policy(const Options& o) {
    WindowPolicy p;
    if (is_satcat(o)) {
        p.moore_start_year = 1967;
        p.wright_start_year = 1961;
    }
    if (o.window_start) p.moore_start_year = p.wright_start_year = o.window_start;
    if (o.moore_window_start) p.moore_start_year = o.moore_window_start;
    if (o.wright_window_start) p.wright_start_year = o.wright_window_start;
    p.end_year = o.window_end;
    p.validate();
    return p;
}

double base_year(const Options& o) { return o.base_year.value_or(is_satcat(o) ? 1957.0 : 1959.0); }
int volume_offset(const Options& o) {
    const int off = o.offset.value_or(is_satcat(o) ? 0 : 7);
    if (off < 0) throw UsageError("--offset must be >= 0");
    return off;
}

/// Samples the chosen law is fitted on, after windowing.
struct Prepared {
    std::vector<Sample> samples;
    std::size_t trimmed = 0;
};

struct Dataset {
    std::vector<LifespanRecord> records;
    EndDatedSeries series;      // mission
    AnnualAggregate aggregate;  // satcat
};

Dataset build_dataset(const Options& o) {
    Dataset d;
    d.records = load_dataset(o);
    if (is_satcat(o)) d.aggregate = aggregate_annual(d.records);
    else d.series = build_end_dated_series(d.records);
    return d;
}

Prepared prepare(const Options& o, const Dataset& d, const WindowPolicy& policy, Law law) {
    if (is_satcat(o)) {
        if (d.aggregate.rows.empty()) throw Error(Errc::InsufficientData, "no ended records");
        auto w = apply_window(d.aggregate, policy, law);
        return {to_samples(w.data), w.trimmed};
    }
    // Ordinality is assigned over the full series so windowing keeps each
    // craft's rank in the overall production order.
    auto w = apply_window(assign_ordinality(d.series, 0), policy, law);
    return {to_samples(w.data), w.trimmed};
}

Json dataset_json(const Options& o, const Dataset& d) {
    Json j{{"kind", o.kind}, {"input", fs::path(o.input).filename().string()}, {"records", d.records.size()}};
    if (!o.operator_pattern.empty()) j["operator_filter"] = o.operator_pattern;
    if (is_satcat(o)) {
        j["years"] = d.aggregate.rows.size();
        j["ended"] = d.aggregate.rows.empty() ? 0 : d.aggregate.rows.back().cumulative_ordinality;
    } else {
        j["series_points"] = d.series.size();
        j["dropped_operational"] = d.series.dropped_operational;
        j["dropped_nonpositive"] = d.series.dropped_nonpositive;
        j["dropped_excluded"] = d.series.dropped_excluded;
    }
    return j;
}

Json window_json(const WindowPolicy& p) {
    auto opt = [](std::optional<int> v) { return v ? Json(*v) : Json(nullptr); };
    return Json{{"moore_start_year", opt(p.moore_start_year)},
                {"wright_start_year", opt(p.wright_start_year)},
                {"end_year", opt(p.end_year)}};
}

std::string plot_svg(const Options& o, const Dataset& d, const std::optional<MooreFit>& moore,
                     const std::optional<WrightFit>& wright) {
    if (is_satcat(o)) {
        svg::LogPlot plot("Satellite lifespans by end year", "End year", "Mean lifespan (years)");
        plot.secondary_label("Satellites ending per year");
        std::vector<std::pair<double, double>> means, counts;
        for (const auto& r : d.aggregate.rows) {
            if (r.mean_lifespan && *r.mean_lifespan > 0.0) means.emplace_back(r.year, *r.mean_lifespan);
            counts.emplace_back(r.year, static_cast<double>(r.ended_count));
        }
        plot.line("Mean lifespan", "#1f4eb4", means);
        plot.line("Ended per year", "#2ca02c", counts, true);
        if (moore && moore->fit_window)
            plot.curve("Moore fit", "#e6b800", moore->fit_window->start, d.aggregate.rows.back().year,
                       [&](double t) { return predict(*moore, t); });
        if (wright && wright->fit_window) {
            std::vector<std::pair<double, double>> pts;
            for (const auto& r : d.aggregate.rows)
                if (r.year >= wright->fit_window->start)
                    pts.emplace_back(r.year, predict(*wright, static_cast<double>(r.cumulative_ordinality)));
            plot.line("Wright fit", "#d62728", pts);
        }
        return plot.render();
    }
    const auto vs = assign_ordinality(d.series, 0);
    if (o.law == "wright") {
        svg::LogPlot plot("Lifespan vs ordinality", "Ordinality (end-date order)", "Lifespan (years)");
        std::vector<std::pair<double, double>> pts;
        for (const auto& p : vs.points) pts.emplace_back(static_cast<double>(p.ordinality), p.lifespan);
        plot.scatter("Spacecraft", "#1f4eb4", pts);
        if (wright && !pts.empty())
            plot.curve("Wright fit", "#d62728", 1.0, pts.back().first, [&](double i) { return predict(*wright, i); });
        return plot.render();
    }
    svg::LogPlot plot("Spacecraft lifespans by end date", "End year", "Lifespan (years)");
    std::vector<std::pair<double, double>> pts;
    for (const auto& p : d.series.points) pts.emplace_back(p.end_time, p.lifespan);
    plot.scatter("Spacecraft", "#1f4eb4", pts);
    if (moore && moore->fit_window)
        plot.curve("Moore fit", "#d62728", moore->fit_window->start, moore->fit_window->end,
                   [&](double t) { return predict(*moore, t); });
    return plot.render();
}

int cmd_fit(const Options& o) {
    const auto d = build_dataset(o);
    const auto policy = window_policy(o);
    const auto space = residual_space(o);
    Json rep{{"schema_version", report::kSchemaVersion}, {"kind", "fit_report"}, {"dataset", dataset_json(o, d)},
             {"window", window_json(policy)}, {"residual_space", to_string(space)}};
    std::optional<MooreFit> moore;
    std::optional<WrightFit> wright;
    if (o.law == "moore" || o.law == "both") {
        const auto prep = prepare(o, d, policy, Law::Moore);
        auto res = fit_moore(prep.samples, base_year(o), space);
        Json j = report::to_json(res.fit);
        j["diagnostics"] = report::diagnostics_json(res.diagnostics);
        j["rows_trimmed_by_window"] = prep.trimmed;
        rep["moore"] = j;
        moore = res.fit;
    }
    if (o.law == "wright" || o.law == "both") {
        const auto prep = prepare(o, d, policy, Law::Wright);
        auto res = fit_wright(prep.samples, volume_offset(o), space);
        Json j = report::to_json(res.fit);
        j["diagnostics"] = report::diagnostics_json(res.diagnostics);
        j["rows_trimmed_by_window"] = prep.trimmed;
        rep["wright"] = j;
        wright = res.fit;
    }
    if (is_satcat(o)) {
        // Published satellite curve: exponent constant and the doubling time quoted alongside it disagree.
        rep["published_reference"] = Json{{"moore_coefficient_years", 0.549},
                                          {"moore_doubling_constant_years", 12.17},
                                          {"stated_doubling_time_years", 15.0},
                                          {"wright_scale_b", 0.0002446},
                                          {"wright_exponent_w", 1.04}};
    }

    if (wants(o, "json")) write_file(out_path(o, "fit_report.json"), dump(rep));
    if (wants(o, "csv")) {
        std::ostringstream s;
        if (is_satcat(o)) {
            report::write_annual_csv(s, d.aggregate);
            write_file(out_path(o, "annual.csv"), s.str());
        } else {
            s << "id,end_decimal_year,lifespan_years,ordinality,volume\n";
            const int off = volume_offset(o);
            for (const auto& p : assign_ordinality(d.series, off).points)
                s << csv::escape(p.id) << ',' << csv::format_double(p.end_time) << ','
                  << csv::format_double(p.lifespan) << ',' << p.ordinality << ',' << p.volume << '\n';
            write_file(out_path(o, "series.csv"), s.str());
        }
    }
    if (wants(o, "svg")) write_file(out_path(o, "fit.svg"), plot_svg(o, d, moore, wright));

    if (moore) {
        const auto dt = doubling_time(*moore);
        std::cout << "moore: lifespan = 2^(" << moore->intercept_log2 << " + " << moore->slope_log2 << " * (t - "
                  << moore->base_year << "))";
        if (dt.years) std::cout << ", doubling time " << *dt.years << " years";
        std::cout << "\n";
    }
    if (wright)
        std::cout << "wright: lifespan = " << wright->scale_b << " * (ordinality + " << wright->volume_offset << ")^"
                  << wright->exponent_w << "\n";
    return kOk;
}

int cmd_compare(const Options& o) {
    const auto d = build_dataset(o);
    // Both laws must see the same rows; a single start year applies to both.
    WindowPolicy policy = window_policy(o);
    if (!o.window_start && !o.moore_window_start && !o.wright_window_start && policy.moore_start_year)
        policy.wright_start_year = policy.moore_start_year;
    if (policy.moore_start_year != policy.wright_start_year)
        throw UsageError("compare needs one window start for both laws");
    const auto space = residual_space(o);
    const auto prep = prepare(o, d, policy, Law::Moore);
    const auto moore = fit_moore(prep.samples, base_year(o), space);
    const auto wright = fit_wright(prep.samples, volume_offset(o), space);
    const auto primary = compare_models(prep.samples, moore.fit, wright.fit, space);
    const auto other_space = space == ResidualSpace::Log2 ? ResidualSpace::Linear : ResidualSpace::Log2;
    const auto secondary = compare_models(prep.samples, moore.fit, wright.fit, other_space);
    Json rep{{"schema_version", report::kSchemaVersion},
             {"kind", "compare_report"},
             {"dataset", dataset_json(o, d)},
             {"window", window_json(policy)},
             {"moore", report::to_json(moore.fit)},
             {"wright", report::to_json(wright.fit)},
             {"comparison", report::to_json(primary)},
             {"comparison_other_space", report::to_json(secondary)}};
    write_file(out_path(o, "compare_report.json"), dump(rep));
    std::cout << "rms (" << to_string(space) << "): moore " << primary.moore_rms << ", wright " << primary.wright_rms
              << " -> " << to_string(primary.winner) << "\n";
    return kOk;
}

int cmd_forecast(const Options& o) {
    if (!o.target_lifespan) throw UsageError("--target-lifespan is required");
    if (!(*o.target_lifespan > 0.0)) throw UsageError("--target-lifespan must be > 0");
    const double target = *o.target_lifespan;

    std::optional<MooreFit> moore;
    std::optional<WrightFit> wright;
    std::string source;
    if (!o.fit_report.empty()) {
        std::ifstream in(o.fit_report);
        if (!in) throw Error(Errc::Io, "cannot open '" + o.fit_report + "'");
        Json j;
        try {
            in >> j;
            if (j.contains("moore")) moore = report::moore_from_json(j.at("moore"));
            if (j.contains("wright")) wright = report::wright_from_json(j.at("wright"));
        } catch (const nlohmann::json::exception& e) {
            throw Error(Errc::MalformedRow, std::string("bad fit report: ") + e.what());
        }
        source = "fit_report";
    } else if (o.coefficient || o.doubling_period || o.scale_b || o.exponent) {
        if (o.coefficient || o.doubling_period) {
            if (!o.coefficient || !o.doubling_period || !o.base_year)
                throw UsageError("--coefficient, --doubling-period and --base-year go together");
            moore = MooreFit::from_doubling(*o.coefficient, *o.doubling_period, *o.base_year);
        }
        if (o.scale_b || o.exponent) {
            if (!o.scale_b || !o.exponent) throw UsageError("--scale-b and --exponent go together");
            wright = WrightFit{*o.scale_b, *o.exponent, o.offset.value_or(0), std::nullopt, ResidualSpace::Log2};
        }
        source = "parameters";
    } else {
        const auto d = build_dataset(o);
        const auto policy = window_policy(o);
        if (o.law != "wright")
            moore = fit_moore(prepare(o, d, policy, Law::Moore).samples, base_year(o), residual_space(o)).fit;
        if (o.law != "moore")
            wright = fit_wright(prepare(o, d, policy, Law::Wright).samples, volume_offset(o), residual_space(o)).fit;
        source = "inline_fit";
    }
    if (!moore && !wright) throw UsageError("no model to forecast with");

    Json rep{{"schema_version", report::kSchemaVersion}, {"kind", "forecast"}, {"model_source", source},
             {"target_lifespan_years", target}};
    if (moore) {
        const double year = year_for_lifespan(*moore, target);
        rep["moore"] = Json{{"base_year", moore->base_year},
                            {"intercept_log2", moore->intercept_log2},
                            {"slope_log2", moore->slope_log2},
                            {"formula", "base_year + (log2(target) - intercept_log2) / slope_log2"},
                            {"year", year}};
        std::cout << "moore: " << target << "-year lifespan reached in " << year << "\n";
    }
    if (wright) {
        const double ord = volume_for_lifespan(*wright, target);
        rep["wright"] = Json{{"scale_b", wright->scale_b},
                             {"exponent_w", wright->exponent_w},
                             {"volume_offset", wright->volume_offset},
                             {"formula", "(target / scale_b)^(1 / exponent_w) - volume_offset"},
                             {"ordinality", ord},
                             {"ordinality_ceil", std::ceil(ord)}};
        std::cout << "wright: " << target << "-year lifespan reached at ordinality " << ord << "\n";
    }
    write_file(out_path(o, "forecast.json"), dump(rep));
    return kOk;
}

int cmd_simulate_bias(const Options& o) {
    if (o.n_seeds < 1) throw UsageError("--n-seeds must be >= 1");
    FleetScenario sc = o.scenario;
    sc.seed = o.seed;
    const auto rep = run_bias_experiment(sc, static_cast<std::size_t>(o.n_seeds), o.threads);
    write_file(out_path(o, "bias_report.json"), dump(report::to_json(rep)));
    std::cout << "launch-binned slope below true slope in " << rep.launch_below_true << " of " << rep.n_seeds
              << " seeds\n";
    if (rep.launch_binned && rep.end_binned)
        std::cout << "median slopes: launch-binned " << rep.launch_binned->median << ", end-binned "
                  << rep.end_binned->median << " (true " << rep.true_slope() << ")\n";
    return kOk;
}

// ---------------------------------------------------------------------------

void add_dataset_flags(CLI::App* c, Options& o) {
    c->add_option("--input", o.input, "Records CSV (from ingest) or mission CSV");
    c->add_option("--kind", o.kind, "Dataset kind")->check(CLI::IsMember({"mission", "satcat"}));
    c->add_option("--operator", o.operator_pattern, "Keep records whose operator contains this (case-insensitive)");
    c->add_option("--base-year", o.base_year, "Moore base year (default 1959 mission, 1957 satcat)");
    c->add_option("--window-start", o.window_start, "First end year used by both laws");
    c->add_option("--window-end", o.window_end, "Last end year used");
    c->add_option("--moore-window-start", o.moore_window_start, "First end year for the Moore fit");
    c->add_option("--wright-window-start", o.wright_window_start, "First end year for the Wright fit");
    c->add_option("--offset", o.offset, "Volume offset added to ordinality (default 7 mission, 0 satcat)");
    c->add_option("--residual-space", o.residual_space, "log2 or linear")->check(CLI::IsMember({"log2", "linear"}));
    c->add_option("--law", o.law, "moore, wright or both")->check(CLI::IsMember({"moore", "wright", "both"}));
    c->add_option("--out-dir", o.out_dir, "Output directory");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Fit Moore's-law and Wright's-law trends to spacecraft and satellite lifespans"};
    app.require_subcommand(1);
    Options o;

    auto* ingest = app.add_subcommand("ingest", "Normalize a mission CSV or fixed-width satellite catalog");
    ingest->add_option("--input", o.input, "Input file")->required();
    ingest->add_option("--kind", o.kind, "mission or satcat")->check(CLI::IsMember({"mission", "satcat"}));
    ingest->add_option("--spec", o.spec, "Column spec JSON for satcat input");
    ingest->add_option("--out-dir", o.out_dir, "Output directory");

    auto* fit = app.add_subcommand("fit", "Fit Moore and/or Wright models");
    add_dataset_flags(fit, o);
    fit->add_option("--format", o.formats, "Outputs: json, csv, svg")
        ->delimiter(',')
        ->check(CLI::IsMember({"json", "csv", "svg"}));

    auto* compare = app.add_subcommand("compare", "Compare Moore and Wright RMS on the same series");
    add_dataset_flags(compare, o);

    auto* forecast = app.add_subcommand("forecast", "When does the trend reach a target lifespan");
    add_dataset_flags(forecast, o);
    forecast->add_option("--target-lifespan", o.target_lifespan, "Target lifespan in years");
    forecast->add_option("--fit-report", o.fit_report, "Use models from a fit_report.json");
    forecast->add_option("--coefficient", o.coefficient, "Moore: lifespan at the base year");
    forecast->add_option("--doubling-period", o.doubling_period, "Moore: years per doubling");
    forecast->add_option("--scale-b", o.scale_b, "Wright: scale B");
    forecast->add_option("--exponent", o.exponent, "Wright: exponent w");

    auto* sim = app.add_subcommand("simulate-bias", "Monte Carlo comparison of launch- vs end-date binning");
    sim->add_option("--seed", o.seed, "First seed");
    sim->add_option("--n-seeds", o.n_seeds, "Number of seeds");
    sim->add_option("--intercept", o.scenario.true_intercept_log2, "True log2 lifespan at the start year");
    sim->add_option("--slope", o.scenario.true_slope_log2, "True log2 slope per year");
    sim->add_option("--sigma", o.scenario.lifespan_noise_sigma_log2, "Log2 lifespan noise");
    sim->add_option("--launches-per-year", o.scenario.launches_per_year, "Launches per year");
    sim->add_option("--start-year", o.scenario.start_year, "First launch year");
    sim->add_option("--observation-year", o.scenario.observation_year, "Observation cut-off");
    sim->add_option("--threads", o.threads, "Worker threads (0 = hardware)");
    sim->add_option("--out-dir", o.out_dir, "Output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kParse;
    }

    try {
        if (*ingest) return cmd_ingest(o);
        if (*fit) return cmd_fit(o);
        if (*compare) return cmd_compare(o);
        if (*forecast) return cmd_forecast(o);
        if (*sim) return cmd_simulate_bias(o);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kParse;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e.code());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kIo;
    }
    return kOk;
}
