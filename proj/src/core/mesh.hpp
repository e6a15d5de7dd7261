#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "core/vec.hpp"

namespace uvbench {

// Indexed triangle mesh with optional per-corner (wedge) texture coordinates.
// Corner k of face f lives at uv_corners[3*f + k]. UV connectivity is carried
// entirely by the corners, so seams need no extra bookkeeping.
struct TriMesh {
    std::vector<Vec3> vertices;
    std::vector<std::array<int, 3>> faces;
    std::vector<Vec2> uv_corners;  // empty, or exactly 3 * faces.size()

    bool has_uvs() const { return !uv_corners.empty(); }
    const Vec2& uv(int face, int corner) const { return uv_corners[3 * face + corner]; }
    Vec2& uv(int face, int corner) { return uv_corners[3 * face + corner]; }

    // Throws invalid_argument when an invariant is broken: out-of-range face
    // index, repeated vertex within a face, or a corner/face count mismatch.
    void validate() const;
};

struct MeshEdge {
    int a = -1;  // a < b
    int b = -1;
    // (face, corner) pairs; corner k denotes the face edge from corner k to
    // corner (k+1)%3.
    std::vector<std::pair<int, int>> incident;

    bool is_boundary() const { return incident.size() == 1; }
    bool is_manifold() const { return incident.size() <= 2; }
};

struct EdgeAdjacency {
    std::vector<MeshEdge> edges;
    std::vector<std::vector<int>> vertex_faces;      // per-vertex incident faces
    std::unordered_map<std::uint64_t, int> edge_ids;  // key(a,b) -> edge index

    static std::uint64_t key(int a, int b) {
        if (a > b) std::swap(a, b);
        return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) |
               static_cast<std::uint32_t>(b);
    }

    // -1 when no such edge exists.
    int edge_between(int a, int b) const {
        auto it = edge_ids.find(key(a, b));
        return it == edge_ids.end() ? -1 : it->second;
    }
};

EdgeAdjacency build_adjacency(const TriMesh& mesh);

double triangle_area_3d(const TriMesh& mesh, int face);
// Positive when the UV triangle winds the same way as the face.
double triangle_area_uv_signed(const TriMesh& mesh, int face);

double total_area_3d(const TriMesh& mesh);
// Sum of |signed UV area| over all faces.
double total_area_uv(const TriMesh& mesh);

// Interior angles in radians, in corner order. nullopt marks a degenerate
// triangle (zero-length edge or zero area); the angle-discrepancy metric
// consumes that marker.
using TriangleAngles = std::array<double, 3>;
std::optional<TriangleAngles> triangle_angles(const Vec3& p0, const Vec3& p1, const Vec3& p2);
std::optional<TriangleAngles> triangle_angles(const Vec2& p0, const Vec2& p1, const Vec2& p2);

struct AreaScale {
    double position_scale = 1.0;
    double uv_scale = 1.0;
};

// Uniformly rescales positions and UVs so that both total areas equal 1.
// Throws zero_area when either total is below tiny_area_threshold.
std::pair<TriMesh, AreaScale> normalize_areas(const TriMesh& mesh,
                                              double tiny_area_threshold = 1e-8);

}  // namespace uvbench
