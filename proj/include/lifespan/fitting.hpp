#pragma once

#include <algorithm>
#include <cmath>
#include <concepts>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lifespan/error.hpp"

namespace lifespan {

enum class ResidualSpace { Log2, Linear };

constexpr std::string_view to_string(ResidualSpace s) noexcept { return s == ResidualSpace::Log2 ? "log2" : "linear"; }

/// One observation as the fitters see it: when it ended, its position in the
/// cumulative-volume order (ordinality, offset not included) and its lifespan.
struct Sample {
    double time = 0.0;
    double ordinality = 0.0;
    double lifespan = 0.0;
};

struct YearRange {
    double start = 0.0;
    double end = 0.0;
    friend bool operator==(const YearRange&, const YearRange&) = default;
};

/// lifespan(t) = 2^(intercept_log2 + slope_log2 * (t - base_year))
struct MooreFit {
    double base_year = 0.0;
    double intercept_log2 = 0.0;
    double slope_log2 = 0.0;
    std::optional<YearRange> fit_window;
    ResidualSpace residual_space = ResidualSpace::Log2;

    /// lifespan = coefficient * 2^((t - base) / doubling_period).
    static MooreFit from_doubling(double coefficient, double doubling_period, double base_year) {
        return MooreFit{base_year, std::log2(coefficient), 1.0 / doubling_period, std::nullopt, ResidualSpace::Log2};
    }
};

/// lifespan(i) = scale_b * (i + volume_offset)^exponent_w, i the ordinality.
struct WrightFit {
    double scale_b = 1.0;
    double exponent_w = 1.0;
    int volume_offset = 0;
    std::optional<YearRange> fit_window;
    ResidualSpace residual_space = ResidualSpace::Log2;
};

struct Residual {
    double x = 0.0;
    double observed = 0.0;
    double predicted = 0.0;
};

struct FitDiagnostics {
    std::size_t n_points = 0;
    std::size_t n_excluded_nonpositive = 0;
    double rms_log2 = 0.0;
    double rms_linear = 0.0;
    std::vector<Residual> residuals;
    // Linear-space refinement only.
    int iterations = 0;
    bool fell_back_to_log2 = false;
};

template <class Fit>
struct FitResult {
    Fit fit;
    FitDiagnostics diagnostics;
};

inline double predict(const MooreFit& m, double year) {
    return std::exp2(m.intercept_log2 + m.slope_log2 * (year - m.base_year));
}

inline double predict(const WrightFit& m, double ordinality) {
    return m.scale_b * std::pow(ordinality + m.volume_offset, m.exponent_w);
}

/// Abscissa a model reads from a sample.
inline double abscissa(const MooreFit&, const Sample& s) noexcept { return s.time; }
inline double abscissa(const WrightFit&, const Sample& s) noexcept { return s.ordinality; }

template <class M>
concept LifespanModel = requires(const M& m, const Sample& s, double x) {
    { predict(m, x) } -> std::convertible_to<double>;
    { abscissa(m, s) } -> std::convertible_to<double>;
};

namespace detail {

struct Line {
    double intercept = 0.0;
    double slope = 0.0;
};

/// Ordinary least squares y = a + b x via centred sums.
inline Line ols(std::span<const double> x, std::span<const double> y) {
    const auto n = static_cast<double>(x.size());
    double xm = 0.0, ym = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        xm += x[i];
        ym += y[i];
    }
    xm /= n;
    ym /= n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = x[i] - xm;
        sxx += dx * dx;
        sxy += dx * (y[i] - ym);
    }
    const double slope = sxy / sxx;
    return {ym - slope * xm, slope};
}

inline double sse_linear(std::span<const double> x, std::span<const double> y, double a, double b) {
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double r = y[i] - std::exp2(a + b * x[i]);
        s += r * r;
    }
    return s;
}

struct Refinement {
    Line line;
    int iterations = 0;
    bool converged = false;
};

/// Gauss-Newton on sum (y - 2^(a + b x))^2, seeded from `seed`, with step
/// halving. Converged once the relative parameter change drops below 1e-10.
inline Refinement gauss_newton(std::span<const double> x, std::span<const double> y, Line seed) {
    constexpr int kMaxIter = 100;
    constexpr double kTol = 1e-10;
    const double ln2 = std::log(2.0);
    double a = seed.intercept, b = seed.slope;
    double sse = sse_linear(x, y, a, b);
    for (int it = 1; it <= kMaxIter; ++it) {
        // Normal equations J^T J d = J^T r.
        double jaa = 0, jab = 0, jbb = 0, ga = 0, gb = 0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            const double p = std::exp2(a + b * x[i]);
            const double da = p * ln2, db = p * ln2 * x[i];
            const double r = y[i] - p;
            jaa += da * da;
            jab += da * db;
            jbb += db * db;
            ga += da * r;
            gb += db * r;
        }
        const double det = jaa * jbb - jab * jab;
        if (!(std::abs(det) > 0.0) || !std::isfinite(det)) return {{a, b}, it, false};
        double step_a = (jbb * ga - jab * gb) / det;
        double step_b = (jaa * gb - jab * ga) / det;

        double scale = 1.0;
        double na = a + step_a, nb = b + step_b;
        double nsse = sse_linear(x, y, na, nb);
        for (int h = 0; h < 60 && !(nsse <= sse); ++h) {
            scale *= 0.5;
            na = a + scale * step_a;
            nb = b + scale * step_b;
            nsse = sse_linear(x, y, na, nb);
        }
        if (!(nsse <= sse)) return {{a, b}, it, false};
        const double change = std::hypot(na - a, nb - b) / std::max(std::hypot(na, nb), 1e-300);
        a = na;
        b = nb;
        sse = nsse;
        if (change < kTol) return {{a, b}, it, true};
    }
    return {{a, b}, kMaxIter, false};
}

struct Prepared {
    std::vector<double> x;
    std::vector<double> y;        // log2 lifespan
    std::vector<double> lifespan;
    std::vector<double> time;
    std::size_t excluded = 0;
};

template <class XOf>
Prepared prepare(std::span<const Sample> samples, XOf x_of) {
    Prepared p;
    for (const auto& s : samples) {
        if (!(s.lifespan > 0.0)) {
            ++p.excluded;
            continue;
        }
        p.x.push_back(x_of(s));
        p.y.push_back(std::log2(s.lifespan));
        p.lifespan.push_back(s.lifespan);
        p.time.push_back(s.time);
    }
    if (p.x.size() < 3)
        throw Error(Errc::InsufficientData,
                    "need at least 3 positive-lifespan points, have " + std::to_string(p.x.size()));
    const auto [lo, hi] = std::minmax_element(p.x.begin(), p.x.end());
    if (*lo == *hi) throw Error(Errc::DegenerateAbscissa, "all abscissae are equal");
    return p;
}

inline YearRange time_range(const std::vector<double>& t) {
    const auto [lo, hi] = std::minmax_element(t.begin(), t.end());
    return {*lo, *hi};
}

struct LineFit {
    Line line;
    int iterations = 0;
    bool fell_back = false;
};

inline LineFit fit_line(const Prepared& p, ResidualSpace space) {
    const Line log_line = ols(p.x, p.y);
    if (space == ResidualSpace::Log2) return {log_line, 0, false};
    const auto refined = gauss_newton(p.x, p.lifespan, log_line);
    if (!refined.converged) return {log_line, refined.iterations, true};
    return {refined.line, refined.iterations, false};
}

}  // namespace detail

/// Residuals and both RMS flavours of `model` over the positive-lifespan samples.
template <LifespanModel M>
FitDiagnostics diagnose(std::span<const Sample> samples, const M& model) {
    FitDiagnostics d;
    double s_log = 0.0, s_lin = 0.0;
    for (const auto& s : samples) {
        if (!(s.lifespan > 0.0)) {
            ++d.n_excluded_nonpositive;
            continue;
        }
        const double x = abscissa(model, s);
        const double p = predict(model, x);
        d.residuals.push_back({x, s.lifespan, p});
        const double rl = std::log2(s.lifespan) - std::log2(p);
        const double r = s.lifespan - p;
        s_log += rl * rl;
        s_lin += r * r;
    }
    d.n_points = d.residuals.size();
    if (d.n_points > 0) {
        d.rms_log2 = std::sqrt(s_log / static_cast<double>(d.n_points));
        d.rms_linear = std::sqrt(s_lin / static_cast<double>(d.n_points));
    }
    return d;
}

/// Root-mean-square error of `model` against the positive-lifespan samples,
/// in log2 units or in years.
template <LifespanModel M>
double rms_error(std::span<const Sample> samples, const M& model, ResidualSpace space) {
    const auto d = diagnose(samples, model);
    if (d.n_points == 0) throw Error(Errc::EmptySeries, "no positive-lifespan samples to score");
    return space == ResidualSpace::Log2 ? d.rms_log2 : d.rms_linear;
}

/// Fits log2(lifespan) = a + b (time - base_year). Linear space refines the
/// log-space solution by Gauss-Newton; if that fails to converge the log-space
/// fit is returned and flagged in the diagnostics.
inline FitResult<MooreFit> fit_moore(std::span<const Sample> samples, double base_year,
                                     ResidualSpace space = ResidualSpace::Log2) {
    if (!std::isfinite(base_year)) throw Error(Errc::InvalidArgument, "base year must be finite");
    const auto p = detail::prepare(samples, [&](const Sample& s) { return s.time - base_year; });
    const auto lf = detail::fit_line(p, space);
    MooreFit fit{base_year, lf.line.intercept, lf.line.slope, detail::time_range(p.time),
                 lf.fell_back ? ResidualSpace::Log2 : space};
    auto diag = diagnose(samples, fit);
    diag.iterations = lf.iterations;
    diag.fell_back_to_log2 = lf.fell_back;
    return {fit, std::move(diag)};
}

/// Fits log2(lifespan) = log2(B) + w log2(ordinality + offset).
inline FitResult<WrightFit> fit_wright(std::span<const Sample> samples, int volume_offset,
                                       ResidualSpace space = ResidualSpace::Log2) {
    if (volume_offset < 0) throw Error(Errc::NegativeOffset, "volume offset must be >= 0");
    for (const auto& s : samples)
        if (s.lifespan > 0.0 && !(s.ordinality + volume_offset > 0.0))
            throw Error(Errc::InvalidArgument, "cumulative volume must be positive");
    const auto p = detail::prepare(samples, [&](const Sample& s) { return std::log2(s.ordinality + volume_offset); });
    const auto lf = detail::fit_line(p, space);
    WrightFit fit{std::exp2(lf.line.intercept), lf.line.slope, volume_offset, detail::time_range(p.time),
                  lf.fell_back ? ResidualSpace::Log2 : space};
    auto diag = diagnose(samples, fit);
    diag.iterations = lf.iterations;
    diag.fell_back_to_log2 = lf.fell_back;
    return {fit, std::move(diag)};
}

/// Years per doubling. Empty when the slope is exactly zero (no trend); a
/// negative value means halving time.
struct DoublingTime {
    std::optional<double> years;

    bool no_trend() const noexcept { return !years.has_value(); }
    bool declining() const noexcept { return years && *years < 0.0; }
};

inline DoublingTime doubling_time(double slope_log2) {
    if (slope_log2 == 0.0) return {};
    return {1.0 / slope_log2};
}

inline DoublingTime doubling_time(const MooreFit& fit) { return doubling_time(fit.slope_log2); }

/// Lifespan multiplier per doubling of cumulative volume.
inline double wright_doubling_factor(double w) { return std::exp2(w); }

/// Fractional volume increase that doubles lifespan.
inline double wright_volume_increase_for_doubling(double w) {
    if (!(w > 0.0)) throw Error(Errc::NonpositiveExponent, "exponent must be > 0");
    return std::exp2(1.0 / w) - 1.0;
}

}  // namespace lifespan
