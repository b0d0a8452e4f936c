#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <random>
#include <span>
#include <thread>
#include <vector>

#include "lifespan/error.hpp"
#include "lifespan/fitting.hpp"

namespace lifespan {

/// Generating Moore law plus a launch cadence and an observation cut-off.
struct FleetScenario {
    double true_intercept_log2 = 0.0;
    double true_slope_log2 = 0.1;
    int launches_per_year = 60;
    int start_year = 1960;
    double observation_year = 2018.0;
    double lifespan_noise_sigma_log2 = 0.3;
    std::uint64_t seed = 1;

    void validate() const {
        if (launches_per_year <= 0) throw Error(Errc::InvalidArgument, "launches per year must be > 0");
        if (!(observation_year > start_year)) throw Error(Errc::InvalidArgument, "observation year must follow start");
        if (!(lifespan_noise_sigma_log2 >= 0.0)) throw Error(Errc::InvalidArgument, "sigma must be >= 0");
    }
};

struct SimulatedCraft {
    int cohort_year = 0;       // launch year the lifespan was drawn for
    double launch_time = 0.0;  // decimal year
    double lifespan = 0.0;     // years
    bool operational = false;  // still working at the observation year

    double end_time() const noexcept { return launch_time + lifespan; }
};

namespace detail {

/// Bit-exact across standard libraries: 53-bit uniforms from mt19937_64 and
/// Box-Muller normals (std distributions are implementation-defined).
class PortableRng {
public:
    explicit PortableRng(std::uint64_t seed) : eng_(seed) {}

    double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    double normal() {
        if (spare_) {
            const double v = *spare_;
            spare_.reset();
            return v;
        }
        double u1 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 2.0 * std::numbers::pi * u2;
        spare_ = r * std::sin(theta);
        return r * std::cos(theta);
    }

private:
    std::mt19937_64 eng_;
    std::optional<double> spare_;
};

}  // namespace detail

/// Launches cohorts from start_year up to (not including) the observation
/// year, each craft at a uniformly drawn time inside its launch year. Lifespans
/// are 2^(intercept + slope (cohort - start) + N(0, sigma)).
inline std::vector<SimulatedCraft> generate_fleet(const FleetScenario& sc) {
    sc.validate();
    detail::PortableRng rng(sc.seed);
    std::vector<SimulatedCraft> fleet;
    const int last_cohort = static_cast<int>(std::ceil(sc.observation_year)) - 1;
    for (int y = sc.start_year; y <= last_cohort; ++y) {
        for (int k = 0; k < sc.launches_per_year; ++k) {
            SimulatedCraft c;
            c.cohort_year = y;
            c.launch_time = y + rng.uniform();
            const double noise = sc.lifespan_noise_sigma_log2 > 0.0 ? sc.lifespan_noise_sigma_log2 * rng.normal() : 0.0;
            c.lifespan = std::exp2(sc.true_intercept_log2 + sc.true_slope_log2 * (y - sc.start_year) + noise);
            if (c.launch_time >= sc.observation_year) continue;
            c.operational = c.end_time() > sc.observation_year;
            fleet.push_back(c);
        }
    }
    return fleet;
}

/// Regresses log2 lifespan of ended craft on launch (cohort) year: the
/// estimator that loses the long-lived survivors of recent cohorts.
inline MooreFit estimate_launch_binned(std::span<const SimulatedCraft> fleet, int start_year) {
    std::vector<Sample> s;
    for (const auto& c : fleet)
        if (!c.operational) s.push_back({static_cast<double>(c.cohort_year), 0.0, c.lifespan});
    return fit_moore(s, start_year).fit;
}

/// Regresses log2 lifespan of ended craft on the decimal year they ended.
inline MooreFit estimate_end_binned(std::span<const SimulatedCraft> fleet, int start_year) {
    std::vector<Sample> s;
    for (const auto& c : fleet)
        if (!c.operational) s.push_back({c.end_time(), 0.0, c.lifespan});
    return fit_moore(s, start_year).fit;
}

struct SlopeSummary {
    double q05 = 0.0;
    double median = 0.0;
    double q95 = 0.0;
};

/// Linear-interpolation quantile (type 7) of an unsorted sample.
inline double quantile(std::vector<double> v, double q) {
    if (v.empty()) throw Error(Errc::EmptySeries, "quantile of empty sample");
    std::sort(v.begin(), v.end());
    const double h = (static_cast<double>(v.size()) - 1.0) * q;
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const auto hi = std::min(lo + 1, v.size() - 1);
    return v[lo] + (h - static_cast<double>(lo)) * (v[hi] - v[lo]);
}

inline SlopeSummary summarize(const std::vector<double>& v) {
    return {quantile(v, 0.05), quantile(v, 0.5), quantile(v, 0.95)};
}

struct SeedOutcome {
    std::uint64_t seed = 0;
    std::optional<double> launch_binned_slope;
    std::optional<double> end_binned_slope;
    std::size_t fleet_size = 0;
    std::size_t operational = 0;
};

struct BiasReport {
    FleetScenario scenario;
    std::size_t n_seeds = 0;
    std::vector<SeedOutcome> seeds;
    std::size_t failed_seeds = 0;
    std::size_t launch_below_true = 0;
    std::optional<SlopeSummary> launch_binned;
    std::optional<SlopeSummary> end_binned;

    double true_slope() const noexcept { return scenario.true_slope_log2; }
    double launch_below_true_fraction() const noexcept {
        return n_seeds ? static_cast<double>(launch_below_true) / static_cast<double>(n_seeds) : 0.0;
    }
};

/// Runs both estimators on fleets drawn with seeds seed .. seed + n_seeds - 1.
/// Seeds are independent and may run on several threads; results are stored
/// by seed index so the report does not depend on scheduling.
inline BiasReport run_bias_experiment(const FleetScenario& scenario, std::size_t n_seeds, unsigned threads = 0) {
    scenario.validate();
    if (n_seeds < 1) throw Error(Errc::InvalidArgument, "n_seeds must be >= 1");
    BiasReport rep;
    rep.scenario = scenario;
    rep.n_seeds = n_seeds;
    rep.seeds.resize(n_seeds);

    auto run_one = [&](std::size_t i) {
        FleetScenario sc = scenario;
        sc.seed = scenario.seed + i;
        SeedOutcome out;
        out.seed = sc.seed;
        const auto fleet = generate_fleet(sc);
        out.fleet_size = fleet.size();
        out.operational = static_cast<std::size_t>(
            std::count_if(fleet.begin(), fleet.end(), [](const SimulatedCraft& c) { return c.operational; }));
        try {
            out.launch_binned_slope = estimate_launch_binned(fleet, sc.start_year).slope_log2;
            out.end_binned_slope = estimate_end_binned(fleet, sc.start_year).slope_log2;
        } catch (const Error& e) {
            if (e.code() != Errc::InsufficientData && e.code() != Errc::DegenerateAbscissa) throw;
            out.launch_binned_slope.reset();
            out.end_binned_slope.reset();
        }
        rep.seeds[i] = out;
    };

    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, n_seeds));
    if (threads <= 1) {
        for (std::size_t i = 0; i < n_seeds; ++i) run_one(i);
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t)
            pool.emplace_back([&, t] {
                for (std::size_t i = t; i < n_seeds; i += threads) run_one(i);
            });
    }

    std::vector<double> lb, eb;
    for (const auto& s : rep.seeds) {
        if (!s.launch_binned_slope) {
            ++rep.failed_seeds;
            continue;
        }
        lb.push_back(*s.launch_binned_slope);
        eb.push_back(*s.end_binned_slope);
        if (*s.launch_binned_slope < scenario.true_slope_log2) ++rep.launch_below_true;
    }
    if (!lb.empty()) {
        rep.launch_binned = summarize(lb);
        rep.end_binned = summarize(eb);
    }
    return rep;
}

}  // namespace lifespan
