#include "wva/svg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>

#include <fmt/format.h>

namespace wva::svg {

namespace {

constexpr double kMarginLeft = 70.0;
constexpr double kMarginRight = 250.0;
constexpr double kMarginTop = 36.0;
constexpr double kMarginBottom = 50.0;

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '&': out += "&amp;"; break;
            default: out += c;
        }
    }
    return out;
}

std::string tick_label(double v) {
    if (v != 0.0 && (std::abs(v) >= 1e4 || std::abs(v) < 1e-2)) return fmt::format("{:.0e}", v);
    return fmt::format("{:.3g}", v);
}

struct Frame {
    double x0, x1, y0, y1;  // data bounds (x in log10 when log_x)
    double left, top, w, h;
    bool log_x;

    double px(double x) const {
        const double v = log_x ? std::log10(x) : x;
        return left + (v - x0) / (x1 - x0) * w;
    }
    double py(double y) const { return top + h - (y - y0) / (y1 - y0) * h; }
};

Frame make_frame(const Plot& plot, double top, double width, double height) {
    double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
    for (const Series& s : plot.series) {
        for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
            if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
            if (plot.log_x && s.x[i] <= 0.0) continue;
            const double xv = plot.log_x ? std::log10(s.x[i]) : s.x[i];
            x0 = std::min(x0, xv);
            x1 = std::max(x1, xv);
            y0 = std::min(y0, s.y[i]);
            y1 = std::max(y1, s.y[i]);
        }
    }
    if (!std::isfinite(x0)) { x0 = 0.0; x1 = 1.0; y0 = 0.0; y1 = 1.0; }
    if (plot.y_range) { y0 = plot.y_range->first; y1 = plot.y_range->second; }
    if (x1 == x0) x1 = x0 + 1.0;
    if (y1 == y0) y1 = y0 + 1.0;
    const double pad = 0.05 * (y1 - y0);
    if (!plot.y_range) { y0 -= pad; y1 += pad; }
    return {x0, x1, y0, y1, kMarginLeft, top + kMarginTop, width - kMarginLeft - kMarginRight,
            height - kMarginTop - kMarginBottom, plot.log_x};
}

void draw_axes(std::ostringstream& os, const Plot& plot, const Frame& f) {
    os << fmt::format(R"(<rect x="{:.2f}" y="{:.2f}" width="{:.2f}" height="{:.2f}" fill="none" stroke="#333"/>)",
                      f.left, f.top, f.w, f.h)
       << '\n';
    std::vector<double> xticks;
    if (f.log_x) {
        for (int d = static_cast<int>(std::floor(f.x0)); d <= static_cast<int>(std::ceil(f.x1)); ++d) {
            if (d >= f.x0 - 1e-12 && d <= f.x1 + 1e-12) xticks.push_back(std::pow(10.0, d));
        }
    } else {
        for (int k = 0; k <= 5; ++k) xticks.push_back(f.x0 + (f.x1 - f.x0) * k / 5.0);
    }
    for (double x : xticks) {
        const double px = f.px(x);
        os << fmt::format(R"(<line x1="{0:.2f}" y1="{1:.2f}" x2="{0:.2f}" y2="{2:.2f}" stroke="#333"/>)", px,
                          f.top + f.h, f.top + f.h + 5)
           << fmt::format(R"(<text x="{:.2f}" y="{:.2f}" font-size="11" text-anchor="middle">{}</text>)", px,
                          f.top + f.h + 18, tick_label(x))
           << '\n';
    }
    for (int k = 0; k <= 5; ++k) {
        const double y = f.y0 + (f.y1 - f.y0) * k / 5.0;
        const double py = f.py(y);
        os << fmt::format(R"(<line x1="{:.2f}" y1="{:.2f}" x2="{:.2f}" y2="{:.2f}" stroke="#333"/>)", f.left - 5, py,
                          f.left, py)
           << fmt::format(R"(<text x="{:.2f}" y="{:.2f}" font-size="11" text-anchor="end">{}</text>)", f.left - 8,
                          py + 4, tick_label(std::abs(y) < 1e-12 ? 0.0 : y))
           << '\n';
    }
    os << fmt::format(R"(<text x="{:.2f}" y="{:.2f}" font-size="14" text-anchor="middle">{}</text>)",
                      f.left + f.w / 2, f.top - 12, escape(plot.title))
       << fmt::format(R"(<text x="{:.2f}" y="{:.2f}" font-size="12" text-anchor="middle">{}</text>)",
                      f.left + f.w / 2, f.top + f.h + 38, escape(plot.x_label))
       << fmt::format(
              R"svg(<text x="{0:.2f}" y="{1:.2f}" font-size="12" text-anchor="middle" transform="rotate(-90 {0:.2f} {1:.2f})">{2}</text>)svg",
              f.left - 48, f.top + f.h / 2, escape(plot.y_label))
       << '\n';
}

void draw_series(std::ostringstream& os, const Series& s, const Frame& f) {
    std::vector<std::pair<double, double>> pts;
    for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
        if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
        if (f.log_x && s.x[i] <= 0.0) continue;
        if (s.y[i] < f.y0 || s.y[i] > f.y1) continue;
        pts.emplace_back(f.px(s.x[i]), f.py(s.y[i]));
    }
    if (s.markers) {
        for (auto [x, y] : pts) {
            os << fmt::format(R"(<circle cx="{:.2f}" cy="{:.2f}" r="4" fill="{}"/>)", x, y, s.color) << '\n';
        }
        return;
    }
    if (pts.empty()) return;
    os << R"(<polyline fill="none" stroke-width="2" stroke=")" << s.color << '"';
    if (s.dashed) os << R"( stroke-dasharray="6,4")";
    os << " points=\"";
    for (std::size_t i = 0; i < pts.size(); ++i) {
        os << (i ? " " : "") << fmt::format("{:.2f},{:.2f}", pts[i].first, pts[i].second);
    }
    os << "\"/>\n";
}

void draw_legend(std::ostringstream& os, const Plot& plot, const Frame& f) {
    double y = f.top + 10;
    const double x = f.left + f.w + 12;
    for (const Series& s : plot.series) {
        if (s.markers) {
            os << fmt::format(R"(<circle cx="{:.2f}" cy="{:.2f}" r="4" fill="{}"/>)", x + 10, y, s.color);
        } else {
            os << fmt::format(R"(<line x1="{:.2f}" y1="{:.2f}" x2="{:.2f}" y2="{:.2f}" stroke="{}" stroke-width="2"{}/>)",
                              x, y, x + 20, y, s.color, s.dashed ? R"( stroke-dasharray="6,4")" : "");
        }
        os << fmt::format(R"(<text x="{:.2f}" y="{:.2f}" font-size="11">{}</text>)", x + 26, y + 4, escape(s.name))
           << '\n';
        y += 18;
    }
}

const char* palette(std::size_t i) {
    static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b"};
    return colors[i % 6];
}

}  // namespace

std::string render(const std::vector<Plot>& panels, double width, double panel_height) {
    std::ostringstream os;
    const double height = panel_height * static_cast<double>(std::max<std::size_t>(1, panels.size()));
    os << fmt::format(R"(<svg xmlns="http://www.w3.org/2000/svg" width="{:.0f}" height="{:.0f}" viewBox="0 0 {:.0f} {:.0f}">)",
                      width, height, width, height)
       << '\n'
       << R"(<rect width="100%" height="100%" fill="white"/>)" << '\n';
    for (std::size_t p = 0; p < panels.size(); ++p) {
        const Plot& plot = panels[p];
        const Frame f = make_frame(plot, panel_height * static_cast<double>(p), width, panel_height);
        draw_axes(os, plot, f);
        for (double xm : plot.x_markers) {
            if (f.log_x && xm <= 0.0) continue;
            const double px = f.px(xm);
            if (px < f.left || px > f.left + f.w) continue;
            os << fmt::format(R"(<line x1="{0:.2f}" y1="{1:.2f}" x2="{0:.2f}" y2="{2:.2f}" stroke="#777" stroke-dasharray="2,3"/>)",
                              px, f.top, f.top + f.h)
               << '\n';
        }
        for (const Series& s : plot.series) draw_series(os, s, f);
        draw_legend(os, plot, f);
    }
    os << "</svg>\n";
    return os.str();
}

std::vector<Plot> fig2_plot(const std::vector<experiments::SweepRow>& rows) {
    Plot plot;
    plot.title = "Post-selected intensity shift vs imbalance";
    plot.x_label = "delta";
    plot.y_label = "D_I (photons)";
    Series curve{"weak value 1/2 + 1/(2 delta)", {}, {}, "#333333", true, false};
    Series base{"weak value at delta = 1 (r = -t)", {}, {}, "#c000c0", false, true};
    Series recon{"stochastic model, reconstructed settings", {}, {}, "#d62728", false, true};
    for (const auto& r : rows) {
        if (r.label == experiments::kReconstructedLabel) {
            recon.x.push_back(r.delta);
            recon.y.push_back(r.D_quadrature.value_or(NAN));
        } else if (r.delta >= 1.0) {
            base.x.push_back(r.delta);
            base.y.push_back(r.D_quantum.value_or(NAN));
        } else {
            curve.x.push_back(r.delta);
            curve.y.push_back(r.D_quantum.value_or(NAN));
        }
    }
    plot.series = {curve, recon, base};
    return {plot};
}

std::vector<Plot> fig3_plot(const std::vector<experiments::DensityPanel>& panels) {
    std::vector<Plot> plots;
    for (const auto& p : panels) {
        Plot plot;
        plot.title = fmt::format("delta = {:g}, <E1> = {:g}, sigma = 1/2", p.delta, p.prior_mean);
        plot.x_label = "E1";
        plot.y_label = "density";
        Series prior{"P(E1)", {}, {}, "#1f77b4", true, false};
        Series like{"P(click|E1) (scaled)", {}, {}, "#2ca02c", true, false};
        Series post{"P(E1|click)", {}, {}, "#d62728", false, false};
        Series approx{"shifted Gaussian", {}, {}, "#7f7f7f", true, false};
        double prior_peak = 0.0, like_peak = 0.0;
        for (const auto& s : p.samples) {
            prior_peak = std::max(prior_peak, s.prior);
            like_peak = std::max(like_peak, s.likelihood);
        }
        const double scale = like_peak > 0.0 ? prior_peak / like_peak : 1.0;
        for (const auto& s : p.samples) {
            prior.x.push_back(s.E1);
            prior.y.push_back(s.prior);
            like.x.push_back(s.E1);
            like.y.push_back(s.likelihood * scale);
            post.x.push_back(s.E1);
            post.y.push_back(s.posterior);
            approx.x.push_back(s.E1);
            approx.y.push_back(s.approx);
        }
        plot.series = {prior, like, post, approx};
        plot.x_markers = {p.prior_mean, p.posterior_mean, p.likelihood_zero};
        plots.push_back(std::move(plot));
    }
    return plots;
}

std::vector<Plot> fig4_plot(const std::vector<experiments::SweepRow>& rows, experiments::Fig4Axis axis) {
    const bool by_delta = axis == experiments::Fig4Axis::VsDelta;
    Plot plot;
    plot.title = by_delta ? "Intensity shift vs imbalance" : "Intensity shift vs dark-port intensity";
    plot.x_label = by_delta ? "delta" : "delta^2 alpha^2";
    plot.y_label = "D_I (photons)";
    plot.log_x = true;

    // Curves keyed by the parameter held fixed along them.
    std::map<double, std::vector<const experiments::SweepRow*>> curves;
    double xmin = std::numeric_limits<double>::infinity(), xmax = 0.0;
    for (const auto& r : rows) {
        const double key = by_delta ? r.E0 * r.E0 : r.delta;
        curves[key].push_back(&r);
        const double x = by_delta ? r.delta : r.darkport_intensity;
        xmin = std::min(xmin, x);
        xmax = std::max(xmax, x);
    }
    std::size_t c = 0;
    for (const auto& [key, members] : curves) {
        const std::string name = by_delta ? fmt::format("|alpha|^2 = {:g}", key) : fmt::format("delta = {:g}", key);
        Series solid{name + " stochastic", {}, {}, palette(c), false, false};
        Series dashed{name + " weak value", {}, {}, palette(c), true, false};
        for (const auto* r : members) {
            const double x = by_delta ? r->delta : r->darkport_intensity;
            solid.x.push_back(x);
            solid.y.push_back(r->D_quadrature.value_or(r->D_exact.value_or(NAN)));
            dashed.x.push_back(x);
            dashed.y.push_back(r->D_quantum.value_or(NAN));
        }
        plot.series.push_back(std::move(solid));
        plot.series.push_back(std::move(dashed));
        ++c;
    }
    if (std::isfinite(xmin)) {
        plot.series.insert(plot.series.begin(),
                           Series{"base shift 1/2 (delta = 1)", {xmin, xmax}, {0.5, 0.5}, "#c000c0", true, false});
    }
    return {plot};
}

}  // namespace wva::svg
