#include "core/svg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "core/csvfmt.hpp"

namespace uvbench {
namespace {

constexpr int kWidth = 640;
constexpr int kHeight = 400;
constexpr int kMarginLeft = 60;
constexpr int kMarginRight = 20;
constexpr int kMarginTop = 40;
constexpr int kMarginBottom = 50;
constexpr int kPlotW = kWidth - kMarginLeft - kMarginRight;
constexpr int kPlotH = kHeight - kMarginTop - kMarginBottom;

std::string num(double v) { return format_double(v); }

void open_svg(std::string& s, const std::string& title) {
    s += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"";
    s += std::to_string(kWidth);
    s += "\" height=\"";
    s += std::to_string(kHeight);
    s += "\" viewBox=\"0 0 " + std::to_string(kWidth) + " " + std::to_string(kHeight) + "\">\n";
    s += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    s += "<text x=\"" + std::to_string(kWidth / 2) +
         "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"16\">" + title +
         "</text>\n";
}

void axis_frame(std::string& s) {
    s += "<line x1=\"" + std::to_string(kMarginLeft) + "\" y1=\"" +
         std::to_string(kMarginTop + kPlotH) + "\" x2=\"" + std::to_string(kMarginLeft + kPlotW) +
         "\" y2=\"" + std::to_string(kMarginTop + kPlotH) + "\" stroke=\"black\"/>\n";
    s += "<line x1=\"" + std::to_string(kMarginLeft) + "\" y1=\"" + std::to_string(kMarginTop) +
         "\" x2=\"" + std::to_string(kMarginLeft) + "\" y2=\"" +
         std::to_string(kMarginTop + kPlotH) + "\" stroke=\"black\"/>\n";
}

void text_at(std::string& s, double x, double y, const std::string& anchor,
             const std::string& content) {
    s += "<text x=\"" + num(x) + "\" y=\"" + num(y) + "\" text-anchor=\"" + anchor +
         "\" font-family=\"sans-serif\" font-size=\"11\">" + content + "</text>\n";
}

void center_note(std::string& s, const std::string& note) {
    text_at(s, kWidth / 2.0, kMarginTop + kPlotH / 2.0, "middle", note);
}

}  // namespace

std::string histogram_svg(const std::string& title, std::span<const double> values, bool log_x,
                          int bins) {
    std::string s;
    open_svg(s, title);
    axis_frame(s);

    std::vector<double> finite;
    std::size_t overflow = 0;
    for (double v : values) {
        if (std::isfinite(v)) {
            finite.push_back(v);
        } else {
            ++overflow;
        }
    }

    if (finite.empty() && overflow == 0) {
        center_note(s, "no data");
        s += "</svg>\n";
        return s;
    }

    // Bin geometry. In log mode zeros (and negatives, which these metrics do
    // not produce) are folded into the first bin.
    double lo = 0.0, hi = 0.0;
    bool degenerate = false;
    double min_pos = std::numeric_limits<double>::infinity();
    if (!finite.empty()) {
        lo = *std::min_element(finite.begin(), finite.end());
        hi = *std::max_element(finite.begin(), finite.end());
        for (double v : finite) {
            if (v > 0.0) min_pos = std::min(min_pos, v);
        }
    }
    if (log_x) {
        if (!std::isfinite(min_pos) || min_pos == hi) {
            degenerate = true;
        } else {
            lo = std::log10(min_pos);
            hi = std::log10(hi);
        }
    } else if (lo == hi) {
        degenerate = true;
    }

    const int nbins = degenerate ? 1 : bins;
    std::vector<std::size_t> counts(static_cast<std::size_t>(nbins), 0);
    for (double v : finite) {
        int b = 0;
        if (!degenerate) {
            const double t = log_x ? (v > 0.0 ? std::log10(v) : lo) : v;
            b = static_cast<int>(static_cast<double>(nbins) * (t - lo) / (hi - lo));
            b = std::clamp(b, 0, nbins - 1);
        }
        ++counts[static_cast<std::size_t>(b)];
    }

    std::size_t max_count = overflow;
    for (std::size_t c : counts) max_count = std::max(max_count, c);
    if (max_count == 0) max_count = 1;

    // Overflow gets its own slot on the right, with a gap.
    const int slots = nbins + (overflow > 0 ? 2 : 0);
    const double slot_w = static_cast<double>(kPlotW) / slots;
    for (int b = 0; b < nbins; ++b) {
        const std::size_t c = counts[static_cast<std::size_t>(b)];
        if (c == 0) continue;
        const double h = static_cast<double>(kPlotH) * static_cast<double>(c) /
                         static_cast<double>(max_count);
        s += "<rect x=\"" + num(kMarginLeft + b * slot_w) + "\" y=\"" +
             num(kMarginTop + kPlotH - h) + "\" width=\"" + num(slot_w) + "\" height=\"" + num(h) +
             "\" fill=\"#4878a8\" stroke=\"white\" stroke-width=\"0.5\"/>\n";
    }
    if (overflow > 0) {
        const double h = static_cast<double>(kPlotH) * static_cast<double>(overflow) /
                         static_cast<double>(max_count);
        const double x = kMarginLeft + (nbins + 1) * slot_w;
        s += "<rect x=\"" + num(x) + "\" y=\"" + num(kMarginTop + kPlotH - h) + "\" width=\"" +
             num(slot_w) + "\" height=\"" + num(h) +
             "\" fill=\"#b04040\" stroke=\"white\" stroke-width=\"0.5\"/>\n";
        text_at(s, x + slot_w / 2.0, kMarginTop + kPlotH + 16, "middle", "inf");
        text_at(s, x + slot_w / 2.0, kMarginTop + kPlotH - h - 4, "middle",
                std::to_string(overflow));
    }

    // Axis labels.
    const auto edge_label = [&](double t) {
        if (degenerate) return finite.empty() ? std::string("-") : num(finite.front());
        const double v = lo + t * (hi - lo);
        return num(log_x ? std::pow(10.0, v) : v);
    };
    text_at(s, kMarginLeft, kMarginTop + kPlotH + 16, "middle", edge_label(0.0));
    text_at(s, kMarginLeft + nbins * slot_w / 2.0, kMarginTop + kPlotH + 16, "middle",
            edge_label(0.5));
    text_at(s, kMarginLeft + nbins * slot_w, kMarginTop + kPlotH + 16, "middle", edge_label(1.0));
    text_at(s, kMarginLeft - 6, kMarginTop + 10, "end", std::to_string(max_count));
    text_at(s, kMarginLeft - 6, kMarginTop + kPlotH, "end", "0");
    if (log_x && !degenerate) {
        text_at(s, kMarginLeft + nbins * slot_w / 2.0, kMarginTop + kPlotH + 32, "middle",
                "(log scale)");
    }

    s += "</svg>\n";
    return s;
}

std::string scatter_svg(const std::string& title, const std::string& x_label,
                        const std::string& y_label,
                        std::span<const std::pair<double, double>> points) {
    std::string s;
    open_svg(s, title);
    axis_frame(s);

    std::vector<std::pair<double, double>> finite;
    std::size_t skipped = 0;
    for (const auto& p : points) {
        if (std::isfinite(p.first) && std::isfinite(p.second)) {
            finite.push_back(p);
        } else {
            ++skipped;
        }
    }

    if (finite.empty()) {
        center_note(s, skipped ? "no finite points (" + std::to_string(skipped) + " omitted)"
                               : "no data");
        s += "</svg>\n";
        return s;
    }

    double xlo = finite.front().first, xhi = xlo;
    double ylo = finite.front().second, yhi = ylo;
    for (const auto& [x, y] : finite) {
        xlo = std::min(xlo, x);
        xhi = std::max(xhi, x);
        ylo = std::min(ylo, y);
        yhi = std::max(yhi, y);
    }
    const double xspan = xhi > xlo ? xhi - xlo : 1.0;
    const double yspan = yhi > ylo ? yhi - ylo : 1.0;

    for (const auto& [x, y] : finite) {
        const double px = kMarginLeft + kPlotW * (x - xlo) / xspan;
        const double py = kMarginTop + kPlotH * (1.0 - (y - ylo) / yspan);
        s += "<circle cx=\"" + num(px) + "\" cy=\"" + num(py) +
             "\" r=\"3\" fill=\"#4878a8\" fill-opacity=\"0.7\"/>\n";
    }

    text_at(s, kMarginLeft, kMarginTop + kPlotH + 16, "middle", num(xlo));
    text_at(s, kMarginLeft + kPlotW, kMarginTop + kPlotH + 16, "middle", num(xhi));
    text_at(s, kMarginLeft + kPlotW / 2.0, kMarginTop + kPlotH + 32, "middle", x_label);
    text_at(s, kMarginLeft - 6, kMarginTop + kPlotH, "end", num(ylo));
    text_at(s, kMarginLeft - 6, kMarginTop + 10, "end", num(yhi));
    text_at(s, kMarginLeft - 6, kMarginTop - 8, "end", y_label);
    if (skipped > 0) {
        text_at(s, kMarginLeft + kPlotW, kMarginTop - 8, "end",
                std::to_string(skipped) + " non-finite omitted");
    }

    s += "</svg>\n";
    return s;
}

namespace {

struct MetricColumn {
    const char* name;
    bool log_scale;
    std::optional<double> (*get)(const MeshMetrics&);
};

const MetricColumn kColumns[] = {
    {"max_area_distortion", true,
     [](const MeshMetrics& m) -> std::optional<double> { return m.max_area_distortion; }},
    {"avg_area_discrepancy", false,
     [](const MeshMetrics& m) -> std::optional<double> { return m.avg_area_discrepancy; }},
    {"min_singular_value", false,
     [](const MeshMetrics& m) -> std::optional<double> { return m.min_singular; }},
    {"max_singular_value", false,
     [](const MeshMetrics& m) -> std::optional<double> { return m.max_singular; }},
    {"pct_flipped", false,
     [](const MeshMetrics& m) -> std::optional<double> { return m.pct_flipped; }},
    {"max_angle_distortion", true,
     [](const MeshMetrics& m) -> std::optional<double> { return m.max_angle_distortion; }},
    {"avg_angle_discrepancy", false,
     [](const MeshMetrics& m) -> std::optional<double> { return m.avg_angle_discrepancy; }},
    {"symmetric_dirichlet", true,
     [](const MeshMetrics& m) -> std::optional<double> { return m.symmetric_dirichlet; }},
    {"resolution", true,
     [](const MeshMetrics& m) -> std::optional<double> { return m.resolution; }},
    {"artist_correlation", false,
     [](const MeshMetrics& m) -> std::optional<double> { return m.artist_correlation; }},
    {"cut_length", false,
     [](const MeshMetrics& m) -> std::optional<double> { return m.cut_length; }},
    {"artist_cut_length_match", false,
     [](const MeshMetrics& m) -> std::optional<double> { return m.artist_cut_match; }},
};

}  // namespace

std::vector<PlotFile> aggregate_plots(std::span<const MeshReport> rows,
                                      std::span<const std::optional<MeshMetrics>> reference) {
    std::vector<PlotFile> files;
    for (const MetricColumn& col : kColumns) {
        std::vector<double> values;
        std::vector<std::pair<double, double>> versus;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (!rows[i].metrics) continue;
            const std::optional<double> v = col.get(*rows[i].metrics);
            if (!v) continue;
            values.push_back(*v);
            if (i < reference.size() && reference[i]) {
                if (const std::optional<double> r = col.get(*reference[i])) {
                    versus.emplace_back(*r, *v);
                }
            }
        }
        files.push_back({std::string(col.name) + "_hist.svg",
                         histogram_svg(col.name, values, col.log_scale)});
        if (!versus.empty()) {
            files.push_back({std::string(col.name) + "_scatter.svg",
                             scatter_svg(std::string(col.name) + ": candidate vs reference",
                                         "reference", "candidate", versus)});
        }
    }
    return files;
}

}  // namespace uvbench
