#include "gplus/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "gplus/errors.hpp"
#include "gplus/report.hpp"

namespace gplus {

namespace {

using namespace plot_geometry;

constexpr const char* kScoreColors[] = {"#1f77b4", "#17becf", "#2ca02c", "#9467bd"};
constexpr const char* kCountColors[] = {"#8c564b", "#bc8b62", "#7f7f7f", "#c5b0d5"};

std::string fmt(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

struct Scale {
    Date origin;
    long span_days = 1;
    double score_max = 1.0;
    double count_max = 1.0;

    double x(const Date& date) const {
        const double plot_w = kWidth - kMarginLeft - kMarginRight;
        if (span_days == 0) return kMarginLeft + plot_w / 2.0;
        const double t = static_cast<double>(date.days_since(origin)) /
                         static_cast<double>(span_days);
        return kMarginLeft + t * plot_w;
    }
    double y_score(double score) const {
        const double plot_h = kHeight - kMarginTop - kMarginBottom;
        return kMarginTop + plot_h * (1.0 - score / score_max);
    }
    double y_count(double count) const {
        const double plot_h = kHeight - kMarginTop - kMarginBottom;
        return kMarginTop + plot_h * (1.0 - count / count_max);
    }
};

void append_text(std::string& svg, double x, double y, const std::string& text,
                 const char* anchor, const char* extra = "") {
    svg += "  <text x=\"" + fmt(x) + "\" y=\"" + fmt(y) + "\" font-family=\"sans-serif\" " +
           "font-size=\"12\" text-anchor=\"" + anchor + "\"" + extra + ">" + text + "</text>\n";
}

}  // namespace

std::string render_timeline_svg(std::span<const TimelineSeries> series) {
    std::size_t total_points = 0;
    for (const auto& s : series) total_points += s.points.size();
    if (total_points == 0) throw EmptyInput("timeline plot requires at least one point");

    Scale scale;
    bool first = true;
    Date last;
    double score_peak = 0.0;
    double count_peak = 0.0;
    for (const auto& s : series) {
        for (const auto& p : s.points) {
            if (first || p.date < scale.origin) scale.origin = p.date;
            if (first || p.date > last) last = p.date;
            score_peak = std::max(score_peak, p.gplus_score);
            count_peak = std::max(count_peak, static_cast<double>(p.performable_task_count));
            first = false;
        }
    }
    scale.span_days = last.days_since(scale.origin);
    scale.score_max = std::max(1.0, score_peak) * kHeadroom;
    scale.count_max = std::max(1.0, count_peak) * kHeadroom;

    const double plot_right = kWidth - kMarginRight;
    const double plot_bottom = kHeight - kMarginBottom;

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(kWidth) + "\" height=\"" +
           fmt(kHeight) + "\" viewBox=\"0 0 " + fmt(kWidth) + " " + fmt(kHeight) + "\">\n";
    svg += "  <rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";

    // Axes.
    svg += "  <line x1=\"" + fmt(kMarginLeft) + "\" y1=\"" + fmt(kMarginTop) + "\" x2=\"" +
           fmt(kMarginLeft) + "\" y2=\"" + fmt(plot_bottom) + "\" stroke=\"#333333\"/>\n";
    svg += "  <line x1=\"" + fmt(kMarginLeft) + "\" y1=\"" + fmt(plot_bottom) + "\" x2=\"" +
           fmt(plot_right) + "\" y2=\"" + fmt(plot_bottom) + "\" stroke=\"#333333\"/>\n";
    svg += "  <line x1=\"" + fmt(plot_right) + "\" y1=\"" + fmt(kMarginTop) + "\" x2=\"" +
           fmt(plot_right) + "\" y2=\"" + fmt(plot_bottom) + "\" stroke=\"#999999\"/>\n";

    // Ticks: five intervals per axis.
    for (int i = 0; i <= 5; ++i) {
        const double t = static_cast<double>(i) / 5.0;
        const double x = kMarginLeft + t * (plot_right - kMarginLeft);
        const long day_offset = std::lround(t * static_cast<double>(scale.span_days));
        svg += "  <line x1=\"" + fmt(x) + "\" y1=\"" + fmt(plot_bottom) + "\" x2=\"" + fmt(x) +
               "\" y2=\"" + fmt(plot_bottom + 5) + "\" stroke=\"#333333\"/>\n";
        append_text(svg, x, plot_bottom + 20, scale.origin.add_days(day_offset).to_string(),
                    "middle");

        const double score = t * scale.score_max;
        const double y = scale.y_score(score);
        svg += "  <line x1=\"" + fmt(kMarginLeft - 5) + "\" y1=\"" + fmt(y) + "\" x2=\"" +
               fmt(kMarginLeft) + "\" y2=\"" + fmt(y) + "\" stroke=\"#333333\"/>\n";
        append_text(svg, kMarginLeft - 8, y + 4, display_one_decimal(score), "end");

        const double count = t * scale.count_max;
        append_text(svg, plot_right + 8, scale.y_count(count) + 4,
                    std::to_string(std::lround(count)), "start");
    }
    append_text(svg, kMarginLeft, kMarginTop - 16, "g+ score (left) / performable tasks (right)",
                "start");

    // Data series.
    for (std::size_t si = 0; si < series.size(); ++si) {
        const auto& s = series[si];
        if (s.points.empty()) continue;
        const char* color = kScoreColors[si % 4];
        const char* count_color = kCountColors[si % 4];

        if (s.points.size() > 1) {
            std::string pts, cpts;
            for (const auto& p : s.points) {
                pts += fmt(scale.x(p.date)) + "," + fmt(scale.y_score(p.gplus_score)) + " ";
                cpts += fmt(scale.x(p.date)) + "," +
                        fmt(scale.y_count(static_cast<double>(p.performable_task_count))) + " ";
            }
            pts.pop_back();
            cpts.pop_back();
            svg += "  <polyline class=\"series-score series-" + s.name + "\" points=\"" + pts +
                   "\" fill=\"none\" stroke=\"" + color + "\" stroke-width=\"2\"/>\n";
            svg += "  <polyline class=\"series-count series-" + s.name + "-count\" points=\"" +
                   cpts + "\" fill=\"none\" stroke=\"" + std::string(count_color) +
                   "\" stroke-width=\"1.5\" stroke-dasharray=\"5,4\"/>\n";
        }
        for (const auto& p : s.points) {
            svg += "  <circle class=\"marker-" + s.name + "\" cx=\"" + fmt(scale.x(p.date)) +
                   "\" cy=\"" + fmt(scale.y_score(p.gplus_score)) + "\" r=\"4\" fill=\"" + color +
                   "\"/>\n";
            svg += "  <circle class=\"marker-" + s.name + "-count\" cx=\"" + fmt(scale.x(p.date)) +
                   "\" cy=\"" + fmt(scale.y_count(static_cast<double>(p.performable_task_count))) +
                   "\" r=\"2.5\" fill=\"" + std::string(count_color) + "\"/>\n";
        }
        append_text(svg, kMarginLeft + 10 + 180.0 * static_cast<double>(si), kMarginTop + 2,
                    s.name, "start", (std::string(" fill=\"") + color + "\"").c_str());
    }

    svg += "</svg>\n";
    return svg;
}

void emit_timeline_plot(std::span<const TimelineSeries> series,
                        const std::filesystem::path& out) {
    const std::string svg = render_timeline_svg(series);
    std::ofstream file(out, std::ios::binary);
    if (!file) throw Error("WriteError", "cannot open " + out.string() + " for writing");
    file << svg;
    file.flush();
    if (!file) throw Error("WriteError", "failed writing " + out.string());
}

}  // namespace gplus
