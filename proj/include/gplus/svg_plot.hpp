#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "gplus/portfolio.hpp"

namespace gplus {

struct TimelineSeries {
    std::string name;  // e.g. "teleop", "autonomous"
    std::vector<TimelinePoint> points;
};

// Plot geometry, exposed so emitted coordinates can be recomputed exactly.
namespace plot_geometry {
inline constexpr double kWidth = 960.0;
inline constexpr double kHeight = 540.0;
inline constexpr double kMarginLeft = 70.0;
inline constexpr double kMarginRight = 70.0;
inline constexpr double kMarginTop = 40.0;
inline constexpr double kMarginBottom = 60.0;
inline constexpr double kHeadroom = 1.05;  // factor above the max of each axis
}  // namespace plot_geometry

/// Renders the g+ timeline as a standalone SVG: one score series per entry
/// in `series` (left axis) plus a dashed performable-task-count series per
/// entry (right axis). A single-point series gets a marker and no line
/// segment. Throws EmptyInput when there is nothing to plot and
/// Error("WriteError", ...) when the file cannot be written.
void emit_timeline_plot(std::span<const TimelineSeries> series,
                        const std::filesystem::path& out);

/// The SVG document as a string (what emit_timeline_plot writes).
std::string render_timeline_svg(std::span<const TimelineSeries> series);

}  // namespace gplus
