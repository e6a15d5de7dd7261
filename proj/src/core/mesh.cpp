#include "core/mesh.hpp"

#include <cmath>
#include <string>

#include "core/error.hpp"

namespace uvbench {

void TriMesh::validate() const {
    const int nv = static_cast<int>(vertices.size());
    for (size_t f = 0; f < faces.size(); ++f) {
        const auto& face = faces[f];
        for (int k = 0; k < 3; ++k) {
            if (face[k] < 0 || face[k] >= nv)
                raise(ErrorCode::invalid_argument,
                      "face " + std::to_string(f) + " references vertex " +
                          std::to_string(face[k]) + " outside [0," + std::to_string(nv) + ")");
        }
        if (face[0] == face[1] || face[1] == face[2] || face[0] == face[2])
            raise(ErrorCode::invalid_argument,
                  "face " + std::to_string(f) + " references the same vertex twice");
    }
    if (!uv_corners.empty() && uv_corners.size() != 3 * faces.size())
        raise(ErrorCode::invalid_argument,
              "uv corner count " + std::to_string(uv_corners.size()) + " != 3 * " +
                  std::to_string(faces.size()) + " faces");
}

EdgeAdjacency build_adjacency(const TriMesh& mesh) {
    EdgeAdjacency adj;
    adj.vertex_faces.resize(mesh.vertices.size());
    adj.edge_ids.reserve(mesh.faces.size() * 2);
    adj.edges.reserve(mesh.faces.size() * 3 / 2);

    for (int f = 0; f < static_cast<int>(mesh.faces.size()); ++f) {
        const auto& face = mesh.faces[f];
        for (int k = 0; k < 3; ++k) {
            adj.vertex_faces[face[k]].push_back(f);
            const int a = face[k];
            const int b = face[(k + 1) % 3];
            const std::uint64_t key = EdgeAdjacency::key(a, b);
            auto [it, inserted] = adj.edge_ids.try_emplace(key, static_cast<int>(adj.edges.size()));
            if (inserted) {
                MeshEdge e;
                e.a = std::min(a, b);
                e.b = std::max(a, b);
                adj.edges.push_back(std::move(e));
            }
            adj.edges[it->second].incident.emplace_back(f, k);
        }
    }
    return adj;
}

double triangle_area_3d(const TriMesh& mesh, int face) {
    const auto& f = mesh.faces[face];
    const Vec3 e1 = mesh.vertices[f[1]] - mesh.vertices[f[0]];
    const Vec3 e2 = mesh.vertices[f[2]] - mesh.vertices[f[0]];
    return 0.5 * norm(cross(e1, e2));
}

double triangle_area_uv_signed(const TriMesh& mesh, int face) {
    const Vec2 e1 = mesh.uv(face, 1) - mesh.uv(face, 0);
    const Vec2 e2 = mesh.uv(face, 2) - mesh.uv(face, 0);
    return 0.5 * cross(e1, e2);
}

double total_area_3d(const TriMesh& mesh) {
    double total = 0.0;
    for (int f = 0; f < static_cast<int>(mesh.faces.size()); ++f) total += triangle_area_3d(mesh, f);
    return total;
}

double total_area_uv(const TriMesh& mesh) {
    double total = 0.0;
    for (int f = 0; f < static_cast<int>(mesh.faces.size()); ++f)
        total += std::abs(triangle_area_uv_signed(mesh, f));
    return total;
}

namespace {

// Angle at the corner between edges u and v, computed as atan2(|u x v|, u.v)
// which stays accurate for needle triangles.
double corner_angle(const Vec3& u, const Vec3& v) { return std::atan2(norm(cross(u, v)), dot(u, v)); }
double corner_angle(const Vec2& u, const Vec2& v) { return std::atan2(std::abs(cross(u, v)), dot(u, v)); }

double doubled_area(const Vec3& e1, const Vec3& e2) { return norm(cross(e1, e2)); }
double doubled_area(const Vec2& e1, const Vec2& e2) { return std::abs(cross(e1, e2)); }

template <typename V>
std::optional<TriangleAngles> angles_impl(const V& p0, const V& p1, const V& p2) {
    const V e01 = p1 - p0, e02 = p2 - p0;
    const V e10 = p0 - p1, e12 = p2 - p1;
    const V e20 = p0 - p2, e21 = p1 - p2;
    if (dot(e01, e01) == 0.0 || dot(e12, e12) == 0.0 || dot(e20, e20) == 0.0) return std::nullopt;
    if (doubled_area(e01, e02) == 0.0) return std::nullopt;
    const double a0 = corner_angle(e01, e02);
    const double a1 = corner_angle(e12, e10);
    const double a2 = corner_angle(e20, e21);
    if (!std::isfinite(a0) || !std::isfinite(a1) || !std::isfinite(a2)) return std::nullopt;
    return TriangleAngles{a0, a1, a2};
}

}  // namespace

std::optional<TriangleAngles> triangle_angles(const Vec3& p0, const Vec3& p1, const Vec3& p2) {
    return angles_impl(p0, p1, p2);
}

std::optional<TriangleAngles> triangle_angles(const Vec2& p0, const Vec2& p1, const Vec2& p2) {
    return angles_impl(p0, p1, p2);
}

std::pair<TriMesh, AreaScale> normalize_areas(const TriMesh& mesh, double tiny_area_threshold) {
    const double area3 = total_area_3d(mesh);
    const double areauv = mesh.has_uvs() ? total_area_uv(mesh) : 0.0;
    if (!(area3 >= tiny_area_threshold))
        raise(ErrorCode::zero_area, "total 3D area " + std::to_string(area3) + " below threshold");
    if (!(areauv >= tiny_area_threshold))
        raise(ErrorCode::zero_area, "total UV area " + std::to_string(areauv) + " below threshold");

    // Area scales quadratically with length, so lengths scale by 1/sqrt(area).
    AreaScale scale;
    scale.position_scale = 1.0 / std::sqrt(area3);
    scale.uv_scale = 1.0 / std::sqrt(areauv);

    TriMesh out = mesh;
    for (auto& v : out.vertices) v = v * scale.position_scale;
    for (auto& t : out.uv_corners) t = t * scale.uv_scale;
    return {std::move(out), scale};
}

}  // namespace uvbench
