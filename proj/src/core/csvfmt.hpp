#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "core/report.hpp"

namespace uvbench {

// Shortest decimal form that parses back to the same double. Infinities are
// "inf"/"-inf", NaN is "nan".
std::string format_double(double value);

// Inverse of format_double, also accepting ordinary decimal and exponent
// forms. Empty or unparsable input is an error.
double parse_double(std::string_view text);

// Minimal CSV escaping: fields containing comma, quote or newline are quoted.
std::string csv_escape(std::string_view field);

// Splits one CSV record, honoring double-quoted fields.
std::vector<std::string> csv_split(std::string_view line);

inline constexpr const char* kReportHeader =
    "filename,n_vertices,n_faces,tag_disk,tag_closed,tag_manifold,tag_small,genus,"
    "n_boundary_loops,pct_boundary_faces,max_area_distortion,avg_area_discrepancy,"
    "min_singular_value,max_singular_value,pct_flipped,max_angle_distortion,"
    "avg_angle_discrepancy,symmetric_dirichlet,resolution,artist_correlation,remeshed,"
    "cut_length,artist_cut_length_match";

std::string report_csv(std::span<const MeshReport> rows);
std::vector<MeshReport> parse_report_csv(std::string_view text);

std::string triangle_csv(std::span<const TriangleRow> rows);

}  // namespace uvbench
