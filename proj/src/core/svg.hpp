#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "core/report.hpp"

namespace uvbench {

// Histogram of one metric. Non-finite values are counted into a separate
// labeled overflow bar instead of a bin. log_x switches to logarithmically
// spaced bins (zeros land in the first bin).
std::string histogram_svg(const std::string& title, std::span<const double> values, bool log_x,
                          int bins = 20);

// Candidate metric against the reference map's value for the same mesh.
std::string scatter_svg(const std::string& title, const std::string& x_label,
                        const std::string& y_label,
                        std::span<const std::pair<double, double>> points);

struct PlotFile {
    std::string name;  // file name, e.g. "symmetric_dirichlet_hist.svg"
    std::string content;
};

// One histogram per metric column over the successful rows, plus scatter
// plots for metrics where the caller supplies per-mesh reference values
// (keyed by row order; entries without a value are skipped).
std::vector<PlotFile> aggregate_plots(std::span<const MeshReport> rows,
                                      std::span<const std::optional<MeshMetrics>> reference);

}  // namespace uvbench
