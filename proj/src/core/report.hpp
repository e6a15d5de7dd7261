#pragma once

#include <optional>
#include <string>
#include <vector>

#include "core/metrics.hpp"
#include "core/topology.hpp"

namespace uvbench {

// One output row. Rows for meshes that failed to evaluate keep only the
// identity columns; everything optional stays empty.
struct MeshReport {
    std::string id;
    std::string filename;
    std::optional<long> n_vertices;
    std::optional<long> n_faces;
    std::optional<TagSet> tags;
    std::optional<long> genus;
    std::optional<long> n_boundary_loops;
    std::optional<double> pct_boundary_faces;
    std::optional<MeshMetrics> metrics;
    std::string failure;  // diagnostic only, not part of the CSV
};

// Per-triangle singular values for one mesh, written next to the report for
// the meshes flagged as interesting.
struct TriangleRow {
    long face_index = 0;
    double cand_sigma1 = 0.0;
    double cand_sigma2 = 0.0;
    std::optional<double> ref_sigma1;
    std::optional<double> ref_sigma2;
};

struct TriangleTable {
    std::string id;
    std::vector<TriangleRow> rows;
};

}  // namespace uvbench
