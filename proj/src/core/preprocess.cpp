#include "core/preprocess.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <unordered_map>
#include <vector>

#include "core/error.hpp"
#include "core/topology.hpp"

namespace uvbench {
namespace {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(std::size_t n) : parent(n) {
        for (std::size_t i = 0; i < n; ++i) parent[i] = static_cast<int>(i);
    }
    int find(int a) {
        while (parent[a] != a) {
            parent[a] = parent[parent[a]];
            a = parent[a];
        }
        return a;
    }
    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        // Smaller index wins so representatives are stable.
        if (b < a) std::swap(a, b);
        parent[b] = a;
    }
};

struct CellKey {
    std::int64_t x, y, z;
    bool operator==(const CellKey&) const = default;
};

struct CellHash {
    std::size_t operator()(const CellKey& k) const {
        std::size_t h = std::hash<std::int64_t>()(k.x);
        h = h * 0x9e3779b97f4a7c15ull + std::hash<std::int64_t>()(k.y);
        h = h * 0x9e3779b97f4a7c15ull + std::hash<std::int64_t>()(k.z);
        return h;
    }
};

std::int64_t cell_coord(double v, double cell) {
    return static_cast<std::int64_t>(std::floor(v / cell));
}

// Pairs of distinct vertices within epsilon of each other, each pair once.
std::vector<std::pair<int, int>> close_pairs(const std::vector<Vec3>& vertices, double epsilon) {
    std::vector<std::pair<int, int>> pairs;
    const int n = static_cast<int>(vertices.size());
    if (epsilon <= 0.0) {
        // Exact coincidence only.
        std::unordered_map<CellKey, std::vector<int>, CellHash> buckets;
        for (int i = 0; i < n; ++i) {
            const Vec3& p = vertices[i];
            // +0.0 folds negative zero into positive zero before hashing.
            CellKey key{static_cast<std::int64_t>(std::hash<double>()(p.x + 0.0)),
                        static_cast<std::int64_t>(std::hash<double>()(p.y + 0.0)),
                        static_cast<std::int64_t>(std::hash<double>()(p.z + 0.0))};
            std::vector<int>& bucket = buckets[key];
            for (int j : bucket) {
                if (vertices[j] == p) pairs.emplace_back(j, i);
            }
            bucket.push_back(i);
        }
        return pairs;
    }
    std::unordered_map<CellKey, std::vector<int>, CellHash> grid;
    grid.reserve(vertices.size());
    for (int i = 0; i < n; ++i) {
        const Vec3& p = vertices[i];
        const CellKey home{cell_coord(p.x, epsilon), cell_coord(p.y, epsilon),
                           cell_coord(p.z, epsilon)};
        for (std::int64_t dx = -1; dx <= 1; ++dx)
            for (std::int64_t dy = -1; dy <= 1; ++dy)
                for (std::int64_t dz = -1; dz <= 1; ++dz) {
                    const auto it = grid.find(CellKey{home.x + dx, home.y + dy, home.z + dz});
                    if (it == grid.end()) continue;
                    for (int j : it->second) {
                        if (dist(vertices[j], p) <= epsilon) pairs.emplace_back(j, i);
                    }
                }
        grid[home].push_back(i);
    }
    std::sort(pairs.begin(), pairs.end());
    return pairs;
}

// Strips unused vertices and faces with a repeated vertex; keeps face order
// and surviving-vertex order.
TriMesh compact(const TriMesh& mesh, const std::vector<int>& vertex_to_root) {
    TriMesh out;
    const bool uvs = mesh.has_uvs();
    std::vector<int> new_index(mesh.vertices.size(), -1);
    for (std::size_t f = 0; f < mesh.faces.size(); ++f) {
        std::array<int, 3> face{};
        for (int k = 0; k < 3; ++k) face[k] = vertex_to_root[mesh.faces[f][k]];
        if (face[0] == face[1] || face[1] == face[2] || face[0] == face[2]) continue;
        for (int& v : face) {
            if (new_index[v] < 0) {
                new_index[v] = static_cast<int>(out.vertices.size());
                out.vertices.push_back(mesh.vertices[v]);
            }
            v = new_index[v];
        }
        out.faces.push_back(face);
        if (uvs) {
            for (int k = 0; k < 3; ++k) out.uv_corners.push_back(mesh.uv(static_cast<int>(f), k));
        }
    }
    return out;
}

}  // namespace

double resolve_merge_epsilon(const TriMesh& mesh, const PreprocessConfig& config) {
    if (config.merge_epsilon_3d >= 0.0) return config.merge_epsilon_3d;
    if (mesh.vertices.empty()) return 0.0;
    Vec3 lo = mesh.vertices.front();
    Vec3 hi = lo;
    for (const Vec3& p : mesh.vertices) {
        lo = Vec3{std::min(lo.x, p.x), std::min(lo.y, p.y), std::min(lo.z, p.z)};
        hi = Vec3{std::max(hi.x, p.x), std::max(hi.y, p.y), std::max(hi.z, p.z)};
    }
    return 1e-6 * dist(lo, hi);
}

TriMesh merge_close_vertices(const TriMesh& mesh, const PreprocessConfig& config) {
    mesh.validate();
    const double eps3 = resolve_merge_epsilon(mesh, config);
    const double epsuv = config.merge_epsilon_uv;
    const bool uvs = mesh.has_uvs();
    const EdgeAdjacency adj = build_adjacency(mesh);

    // UV agreement between the corners a merge of (u, v) would identify: for
    // each shared neighbor x, gluing edge (u,x) onto (v,x) pairs up the faces
    // on both sides, and each face pair must agree at the merged vertex and
    // at x.
    const auto uv_compatible = [&](int u, int v) {
        if (!uvs) return true;
        const auto corner_of = [&](int face, int vertex) {
            for (int k = 0; k < 3; ++k) {
                if (mesh.faces[face][k] == vertex) return k;
            }
            raise(ErrorCode::internal, "corner lookup failed");
        };
        for (int fu : adj.vertex_faces[u]) {
            for (int ku = 0; ku < 3; ++ku) {
                const int x = mesh.faces[fu][ku];
                if (x == u || x == v) continue;
                const int ev = adj.edge_between(v, x);
                if (ev < 0) continue;
                const int cu = corner_of(fu, u);
                const int cx = corner_of(fu, x);
                for (const auto& [fv, unused] : adj.edges[ev].incident) {
                    if (dist(mesh.uv(fu, cu), mesh.uv(fv, corner_of(fv, v))) > epsuv) return false;
                    if (dist(mesh.uv(fu, cx), mesh.uv(fv, corner_of(fv, x))) > epsuv) return false;
                }
            }
        }
        return true;
    };

    UnionFind uf(mesh.vertices.size());
    for (const auto& [a, b] : close_pairs(mesh.vertices, eps3)) {
        if (uv_compatible(a, b) && uv_compatible(b, a)) uf.unite(a, b);
    }

    std::vector<int> root(mesh.vertices.size());
    for (std::size_t i = 0; i < root.size(); ++i) root[i] = uf.find(static_cast<int>(i));
    return compact(mesh, root);
}

std::vector<TriMesh> split_and_cap(const TriMesh& mesh, const PreprocessConfig& config) {
    if (config.max_components < 1) raise(ErrorCode::invalid_argument, "max_components must be >= 1");
    std::vector<TriMesh> parts = connected_components(mesh);
    if (parts.size() > static_cast<std::size_t>(config.max_components)) {
        parts.resize(static_cast<std::size_t>(config.max_components));
    }
    return parts;
}

TriMesh cut_along_seams(const TriMesh& mesh, double uv_epsilon) {
    mesh.validate();
    if (!mesh.has_uvs()) raise(ErrorCode::invalid_argument, "cutting requires UVs");
    const EdgeAdjacency adj = build_adjacency(mesh);

    // Corners are numbered 3*face + k. Group corners around each vertex; each
    // group becomes one output vertex.
    UnionFind corners(3 * mesh.faces.size());
    const auto corner_at = [&](int face, int vertex) {
        for (int k = 0; k < 3; ++k) {
            if (mesh.faces[face][k] == vertex) return 3 * face + k;
        }
        raise(ErrorCode::internal, "corner lookup failed");
    };
    const auto uv_of = [&](int corner) { return mesh.uv_corners[corner]; };

    for (const MeshEdge& e : adj.edges) {
        for (std::size_t i = 0; i + 1 < e.incident.size(); ++i) {
            for (std::size_t j = i + 1; j < e.incident.size(); ++j) {
                const int fi = e.incident[i].first;
                const int fj = e.incident[j].first;
                const int ai = corner_at(fi, e.a);
                const int aj = corner_at(fj, e.a);
                const int bi = corner_at(fi, e.b);
                const int bj = corner_at(fj, e.b);
                if (dist(uv_of(ai), uv_of(aj)) <= uv_epsilon &&
                    dist(uv_of(bi), uv_of(bj)) <= uv_epsilon) {
                    corners.unite(ai, aj);
                    corners.unite(bi, bj);
                }
            }
        }
    }

    TriMesh out;
    out.faces.resize(mesh.faces.size());
    out.uv_corners.resize(3 * mesh.faces.size());
    std::vector<int> group_vertex(3 * mesh.faces.size(), -1);
    for (std::size_t f = 0; f < mesh.faces.size(); ++f) {
        for (int k = 0; k < 3; ++k) {
            const int corner = static_cast<int>(3 * f + k);
            const int rep = corners.find(corner);
            if (group_vertex[rep] < 0) {
                group_vertex[rep] = static_cast<int>(out.vertices.size());
                out.vertices.push_back(mesh.vertices[mesh.faces[f][k]]);
            } else if (dist(uv_of(corner), uv_of(rep)) > uv_epsilon) {
                raise(ErrorCode::uv_mismatch,
                      "surface connectivity does not match UV connectivity at vertex " +
                          std::to_string(mesh.faces[f][k]));
            }
            out.faces[f][k] = group_vertex[rep];
            out.uv_corners[corner] = uv_of(rep);
        }
    }
    return out;
}

int chart_count(const TriMesh& mesh, double uv_epsilon) {
    const TriMesh cut = cut_along_seams(mesh, uv_epsilon);
    return static_cast<int>(connected_components(cut).size());
}

}  // namespace uvbench
