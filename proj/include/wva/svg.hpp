#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wva/experiments.hpp"

/// Minimal polyline plots written as standalone SVG text.
namespace wva::svg {

struct Series {
    std::string name;
    std::vector<double> x;
    std::vector<double> y;
    std::string color = "#1f77b4";
    bool dashed = false;
    bool markers = false;  ///< draw points instead of a line
};

struct Plot {
    std::string title;
    std::string x_label;
    std::string y_label;
    bool log_x = false;
    std::optional<std::pair<double, double>> y_range;
    std::vector<Series> series;
    std::vector<double> x_markers;  ///< vertical reference lines
};

/// Plots stacked vertically in one document.
std::string render(const std::vector<Plot>& panels, double width = 860.0, double panel_height = 420.0);

std::vector<Plot> fig2_plot(const std::vector<experiments::SweepRow>& rows);
std::vector<Plot> fig3_plot(const std::vector<experiments::DensityPanel>& panels);
std::vector<Plot> fig4_plot(const std::vector<experiments::SweepRow>& rows, experiments::Fig4Axis axis);

}  // namespace wva::svg
