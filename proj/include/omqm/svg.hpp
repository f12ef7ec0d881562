#pragma once

// Minimal hand-emitted SVG plots.

#include <string>
#include <vector>

namespace omqm::svg {

struct Series {
    std::vector<double> x;
    std::vector<double> y;
    std::string colour = "#1f77b4";
};

std::string line_plot(const std::vector<Series>& series, const std::string& title);
std::string scatter_plot(const std::vector<Series>& series, const std::string& title);

/// Bars for `bars`, with an optional overlay polyline drawn at the same
/// positions (pass an empty vector to omit it).
std::string histogram(const std::vector<double>& bars, const std::vector<double>& overlay,
                      const std::string& title);

/// Row-major grid of values (rows x cols), linear grey-to-blue colour map.
std::string heatmap(const std::vector<double>& values, std::size_t rows, std::size_t cols,
                    const std::string& title);

}  // namespace omqm::svg
