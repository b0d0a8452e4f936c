#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace lifespan::svg {

inline constexpr const char* kGeneratorComment = "<!-- lifespan-trends 0.1.0 -->";

struct Layer {
    enum class Kind { Scatter, Line } kind = Kind::Scatter;
    std::string label;
    std::string color;
    std::vector<std::pair<double, double>> points;  // (x, y) in data units, y > 0
    bool secondary_axis = false;                     // linear right-hand axis
};

/// Scatter/line chart with a log2 lifespan axis labelled in powers of two and
/// an optional linear right-hand axis (annual counts).
class LogPlot {
public:
    LogPlot(std::string title, std::string x_label, std::string y_label)
        : title_(std::move(title)), x_label_(std::move(x_label)), y_label_(std::move(y_label)) {}

    void scatter(std::string label, std::string color, std::vector<std::pair<double, double>> pts) {
        layers_.push_back({Layer::Kind::Scatter, std::move(label), std::move(color), std::move(pts), false});
    }
    void line(std::string label, std::string color, std::vector<std::pair<double, double>> pts, bool secondary = false) {
        layers_.push_back({Layer::Kind::Line, std::move(label), std::move(color), std::move(pts), secondary});
    }
    /// Samples `f` at `n` points over [x0, x1].
    void curve(std::string label, std::string color, double x0, double x1, const std::function<double(double)>& f,
               int n = 200) {
        std::vector<std::pair<double, double>> pts;
        for (int i = 0; i < n; ++i) {
            const double x = x0 + (x1 - x0) * i / (n - 1);
            pts.emplace_back(x, f(x));
        }
        line(std::move(label), std::move(color), std::move(pts));
    }
    void secondary_label(std::string s) { y2_label_ = std::move(s); }

    std::string render() const {
        double x0 = INFINITY, x1 = -INFINITY, l0 = INFINITY, l1 = -INFINITY, c1 = 0.0;
        for (const auto& layer : layers_)
            for (auto [x, y] : layer.points) {
                if (layer.secondary_axis) {
                    c1 = std::max(c1, y);
                    x0 = std::min(x0, x);
                    x1 = std::max(x1, x);
                    continue;
                }
                if (!(y > 0.0) || !std::isfinite(y)) continue;
                x0 = std::min(x0, x);
                x1 = std::max(x1, x);
                l0 = std::min(l0, std::log2(y));
                l1 = std::max(l1, std::log2(y));
            }
        if (!std::isfinite(x0)) x0 = 0, x1 = 1;
        if (x1 == x0) x1 = x0 + 1;
        if (!std::isfinite(l0)) l0 = 0, l1 = 1;
        const int k0 = static_cast<int>(std::floor(l0)), k1 = std::max(static_cast<int>(std::ceil(l1)), k0 + 1);
        if (c1 <= 0.0) c1 = 1.0;

        const double W = 800, H = 500, L = 70, R = 70, T = 40, B = 60;
        auto sx = [&](double x) { return L + (x - x0) / (x1 - x0) * (W - L - R); };
        auto sy = [&](double y) { return H - B - (std::log2(y) - k0) / (k1 - k0) * (H - T - B); };
        auto sy2 = [&](double c) { return H - B - c / c1 * (H - T - B); };

        std::string s;
        s += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
        s += kGeneratorComment;
        s += "\n";
        s += fmt("<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%g\" height=\"%g\" viewBox=\"0 0 %g %g\">\n", W, H, W, H);
        s += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
        s += fmt("<text x=\"%g\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"16\">", W / 2) +
             escape(title_) + "</text>\n";
        s += fmt("<line x1=\"%g\" y1=\"%g\" x2=\"%g\" y2=\"%g\" stroke=\"black\"/>\n", L, H - B, W - R, H - B);
        s += fmt("<line x1=\"%g\" y1=\"%g\" x2=\"%g\" y2=\"%g\" stroke=\"black\"/>\n", L, T, L, H - B);

        for (int k = k0; k <= k1; ++k) {
            const double y = sy(std::exp2(k));
            s += fmt("<line x1=\"%g\" y1=\"%.2f\" x2=\"%g\" y2=\"%.2f\" stroke=\"#ddd\"/>\n", L, y, W - R, y);
            s += fmt("<text x=\"%g\" y=\"%.2f\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">2<tspan "
                     "dy=\"-5\" font-size=\"8\">%d</tspan></text>\n",
                     L - 6, y + 4, k);
        }
        const double step = nice_step((x1 - x0) / 8);
        for (double x = std::ceil(x0 / step) * step; x <= x1 + 1e-9; x += step)
            s += fmt("<text x=\"%.2f\" y=\"%g\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">%g</text>\n",
                     sx(x), H - B + 16, x);
        s += fmt("<text x=\"%g\" y=\"%g\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">", (L + W - R) / 2,
                 H - 20) +
             escape(x_label_) + "</text>\n";
        s += fmt("<text x=\"16\" y=\"%g\" transform=\"rotate(-90 16 %g)\" text-anchor=\"middle\" font-family=\"sans-serif\" "
                 "font-size=\"12\">",
                 (T + H - B) / 2, (T + H - B) / 2) +
             escape(y_label_) + "</text>\n";
        const bool has_secondary =
            std::any_of(layers_.begin(), layers_.end(), [](const Layer& l) { return l.secondary_axis; });
        if (has_secondary) {
            s += fmt("<line x1=\"%g\" y1=\"%g\" x2=\"%g\" y2=\"%g\" stroke=\"black\"/>\n", W - R, T, W - R, H - B);
            for (int i = 0; i <= 4; ++i) {
                const double c = c1 * i / 4;
                s += fmt("<text x=\"%g\" y=\"%.2f\" font-family=\"sans-serif\" font-size=\"11\">%g</text>\n", W - R + 6,
                         sy2(c) + 4, std::round(c));
            }
            s += fmt("<text x=\"%g\" y=\"%g\" transform=\"rotate(90 %g %g)\" text-anchor=\"middle\" font-family=\"sans-serif\" "
                     "font-size=\"12\">",
                     W - 16, (T + H - B) / 2, W - 16, (T + H - B) / 2) +
                 escape(y2_label_) + "</text>\n";
        }

        int legend = 0;
        for (const auto& layer : layers_) {
            if (layer.kind == Layer::Kind::Scatter) {
                for (auto [x, y] : layer.points)
                    if (y > 0.0 && std::isfinite(y))
                        s += fmt("<circle cx=\"%.2f\" cy=\"%.2f\" r=\"2.5\" fill=\"", sx(x), sy(y)) + layer.color +
                             "\" fill-opacity=\"0.7\"/>\n";
            } else {
                std::string path;
                for (auto [x, y] : layer.points) {
                    if (!layer.secondary_axis && !(y > 0.0 && std::isfinite(y))) continue;
                    path += fmt(path.empty() ? "M%.2f %.2f" : " L%.2f %.2f", sx(x), layer.secondary_axis ? sy2(y) : sy(y));
                }
                s += "<path d=\"" + path + "\" fill=\"none\" stroke=\"" + layer.color + "\" stroke-width=\"1.8\"/>\n";
            }
            const double ly = T + 12 + 16 * legend++;
            s += fmt("<rect x=\"%g\" y=\"%g\" width=\"10\" height=\"10\" fill=\"", L + 10, ly - 9) + layer.color + "\"/>\n";
            s += fmt("<text x=\"%g\" y=\"%g\" font-family=\"sans-serif\" font-size=\"11\">", L + 26, ly) +
                 escape(layer.label) + "</text>\n";
        }
        s += "</svg>\n";
        return s;
    }

private:
    template <class... A>
    static std::string fmt(const char* f, A... a) {
        char buf[512];
        const int n = std::snprintf(buf, sizeof buf, f, a...);
        return std::string(buf, static_cast<std::size_t>(std::max(0, std::min<int>(n, sizeof buf - 1))));
    }
    static std::string escape(const std::string& in) {
        std::string o;
        for (char c : in) {
            switch (c) {
            case '<': o += "&lt;"; break;
            case '>': o += "&gt;"; break;
            case '&': o += "&amp;"; break;
            case '"': o += "&quot;"; break;
            default: o += c;
            }
        }
        return o;
    }
    static double nice_step(double raw) {
        const double mag = std::pow(10.0, std::floor(std::log10(raw)));
        for (double m : {1.0, 2.0, 5.0, 10.0})
            if (raw <= m * mag) return m * mag;
        return 10 * mag;
    }

    std::string title_, x_label_, y_label_, y2_label_;
    std::vector<Layer> layers_;
};

}  // namespace lifespan::svg
