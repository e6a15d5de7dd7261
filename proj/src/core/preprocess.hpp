#pragma once

#include <vector>

#include "core/mesh.hpp"

namespace uvbench {

struct PreprocessConfig {
    // Merge radius in model units. Negative means "derive from the bounding
    // box": 1e-6 times its diagonal.
    double merge_epsilon_3d = -1.0;
    double merge_epsilon_uv = 1e-6;
    int max_components = 50;
};

double resolve_merge_epsilon(const TriMesh& mesh, const PreprocessConfig& config);

// Collapses vertices that are within merge_epsilon_3d of each other, but only
// when doing so cannot weld across a UV seam: every pair of corners that the
// merge would identify across a shared edge must agree in UV within
// merge_epsilon_uv. Qualifying pairs merge by transitive closure; faces that
// end up with a repeated vertex are dropped, as are vertices no face uses.
TriMesh merge_close_vertices(const TriMesh& mesh, const PreprocessConfig& config);

// Connected components, largest first, truncated to max_components.
std::vector<TriMesh> split_and_cap(const TriMesh& mesh, const PreprocessConfig& config);

// Duplicates vertices until surface connectivity matches UV connectivity: an
// edge keeps its two faces glued only when their corner UVs agree at both
// endpoints within uv_epsilon. Corner UVs within one output vertex are
// canonicalized to the first corner's value; a disagreement beyond uv_epsilon
// raises UVMismatch. Unreferenced vertices are removed.
TriMesh cut_along_seams(const TriMesh& mesh, double uv_epsilon = 1e-6);

// Number of UV charts: connected components after cutting along seams.
int chart_count(const TriMesh& mesh, double uv_epsilon = 1e-6);

}  // namespace uvbench
