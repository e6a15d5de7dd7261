#pragma once

#include <optional>
#include <vector>

#include "core/mesh.hpp"

namespace uvbench {

struct TopologyInfo {
    long n_vertices = 0;
    long n_edges = 0;
    long n_faces = 0;
    long euler_characteristic = 0;  // V - E + F, integer arithmetic
    long n_boundary_loops = 0;      // closed cycles walked over boundary edges
    long n_boundary_faces = 0;      // faces with at least one boundary edge
    long n_components = 0;          // vertex-connectivity components
    bool vertex_manifold = false;
    bool edge_manifold = false;
    bool orientable = false;
    // Present only for connected, manifold, orientable meshes, where
    // chi = 2 - 2g - loops holds.
    std::optional<long> genus;
};

struct TagSet {
    bool disk = false;      // euler characteristic 1
    bool closed = false;    // no boundary
    bool manifold = false;  // vertex- and edge-manifold
    bool small = false;     // fewer than 100 faces, strict
};

TopologyInfo compute_topology(const TriMesh& mesh, const EdgeAdjacency& adj);

TagSet evaluate_tags(const TopologyInfo& info, long n_faces);

// Splits by shared-vertex connectivity. Outputs are compactly reindexed,
// ordered by descending face count with ties broken by first-face index;
// vertices unused by a component's faces are dropped.
std::vector<TriMesh> connected_components(const TriMesh& mesh);

}  // namespace uvbench
