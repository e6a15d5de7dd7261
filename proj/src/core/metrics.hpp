#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "core/jacobian.hpp"
#include "core/mesh.hpp"

namespace uvbench {

// One mesh's worth of parameterization quality numbers. Every distortion
// value may be +infinity (never NaN); optional fields are left empty in the
// CSV when absent.
struct MeshMetrics {
    double max_area_distortion = 0.0;
    double avg_area_discrepancy = 0.0;
    double min_singular = 0.0;
    double max_singular = 0.0;
    double pct_flipped = 0.0;
    double max_angle_distortion = 0.0;
    double avg_angle_discrepancy = 0.0;
    double symmetric_dirichlet = 0.0;
    double resolution = 0.0;
    std::optional<double> artist_correlation;
    bool remeshed = false;
    std::optional<double> cut_length;
    std::optional<double> artist_cut_match;
};

// All of the following expect measures computed on an area-normalized mesh
// (total 3D and UV area 1), except resolution which takes the original mesh.

// max over usable triangles of A/A_uv + A_uv/A - 2; +inf when a UV triangle
// collapses. Throws all_degenerate when no triangle is usable.
double max_area_distortion(std::span<const TriangleMeasures> measures);

// sum |A - A_uv| / sum A, in [0, 2].
double avg_area_discrepancy(std::span<const TriangleMeasures> measures);

// (min sigma2, max sigma1) over usable triangles; they need not come from the
// same triangle. Throws all_degenerate.
std::pair<double, double> singular_extrema(std::span<const TriangleMeasures> measures);

// min(x, 100-x) where x is the flipped percentage over all faces; in [0, 50].
double pct_flipped(std::span<const TriangleMeasures> measures);

// max over usable triangles of s1/s2 + s2/s1 - 2; +inf on collapse. Throws
// all_degenerate.
double max_angle_distortion(std::span<const TriangleMeasures> measures);

// Area-weighted mean of per-corner angle deviations; collapsed UV triangles
// count as the 2*pi maximum. In [0, 2*pi].
double avg_angle_discrepancy(std::span<const TriangleMeasures> measures);

// sum A * (s1^2 + s2^2 + 1/s1^2 + 1/s2^2) / 2; at least 2, +inf on collapse.
double symmetric_dirichlet(std::span<const TriangleMeasures> measures);

// Texture resolution demand: UVs are uniformly refit to the unit square, the
// 3D geometry keeps its original scale, and the result is
// max over triangles of 1/sigma2. Throws all_degenerate.
double resolution(const TriMesh& original_mesh);

// Area-weighted correlation-style score between candidate and reference
// singular values, from 0 (perfect correlation) to 2 (perfect
// anti-correlation). Empty when either side has zero variance. Requires
// triangle correspondence (same mesh, not remeshed).
std::optional<double> artist_correlation(std::span<const TriangleMeasures> candidate,
                                         std::span<const TriangleMeasures> reference);

// True when the candidate geometry cannot be matched triangle-for-triangle to
// the reference: differing counts, any face row referencing different
// vertices, or any vertex moved by more than 1e-5 per coordinate (compared in
// original model units).
bool detect_remeshed(const TriMesh& candidate, const TriMesh& reference);

// Total 3D length, after scaling the reference mesh to unit area, of interior
// reference edges whose candidate corner UVs disagree across the edge.
// Original boundary edges never count. The candidate must either share the
// reference connectivity or correspond face-by-face within 1e-5; otherwise
// throws correspondence_failure.
double cut_length(const TriMesh& candidate, const TriMesh& reference,
                  const EdgeAdjacency& reference_adj, double uv_epsilon = 1e-6);

// max(0, C - C_art): only excess cut length counts against a method.
double artist_cut_match(double cut, double artist_cut);

// View of a finished report used for interesting-mesh selection.
struct ReportedValues {
    std::string id;
    std::optional<double> artist_correlation;
    std::optional<double> avg_area_discrepancy;
    std::optional<double> avg_angle_discrepancy;
    std::optional<double> pct_flipped;
};

// Hand-picked ids plus the argmax mesh of each selection metric, deduplicated
// in manifest order. Finite maxima win over non-finite ones; ties keep the
// earliest mesh.
std::vector<std::string> select_interesting(std::span<const ReportedValues> rows,
                                            std::span<const std::string> hand_picked);

// Complete candidate-vs-reference evaluation of one mesh pair: normalizes
// both maps, computes every metric, and fills the comparison fields when the
// candidate keeps the reference connectivity. Throws on unusable input
// (missing or non-finite UVs, tiny total area).
MeshMetrics measure_pair(const TriMesh& candidate, const TriMesh& reference,
                         double tiny_area = 1e-8);

}  // namespace uvbench
