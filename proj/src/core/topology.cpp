#include "core/topology.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <unordered_map>

namespace uvbench {

namespace {

struct UnionFind {
    std::vector<int> parent;

    explicit UnionFind(size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }

    int find(int x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }

    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
};

int third_vertex(const std::array<int, 3>& face, int a, int b) {
    for (int k = 0; k < 3; ++k)
        if (face[k] != a && face[k] != b) return face[k];
    return -1;
}

// Walks the fan around `pivot` starting from `from_face` (entered across the
// edge {pivot, prev}) until it reaches a boundary edge. Returns that edge's
// id, or nullopt when the pivot hits a nonmanifold edge or wraps around.
std::optional<int> next_boundary_edge_in_fan(const TriMesh& mesh, const EdgeAdjacency& adj,
                                             int pivot, int prev, int from_face) {
    int face = from_face;
    int prev_vertex = prev;
    const size_t cap = adj.vertex_faces[pivot].size() + 1;
    for (size_t step = 0; step < cap; ++step) {
        const int other = third_vertex(mesh.faces[face], pivot, prev_vertex);
        const int eid = adj.edge_between(pivot, other);
        const MeshEdge& e = adj.edges[eid];
        if (e.is_boundary()) return eid;
        if (!e.is_manifold()) return std::nullopt;
        const int next_face = e.incident[0].first == face ? e.incident[1].first : e.incident[0].first;
        prev_vertex = other;
        face = next_face;
    }
    return std::nullopt;  // closed fan, no boundary reachable
}

// Counts closed cycles over boundary edges. At manifold boundary vertices the
// continuation is the unique boundary edge on the far side of the fan; at
// nonmanifold ones we fall back to the lowest-index unvisited boundary edge so
// every maximal cycle is counted exactly once.
long count_boundary_loops(const TriMesh& mesh, const EdgeAdjacency& adj) {
    std::vector<char> visited(adj.edges.size(), 0);
    std::vector<std::vector<int>> vertex_boundary_edges(mesh.vertices.size());
    for (int eid = 0; eid < static_cast<int>(adj.edges.size()); ++eid) {
        if (!adj.edges[eid].is_boundary()) continue;
        vertex_boundary_edges[adj.edges[eid].a].push_back(eid);
        vertex_boundary_edges[adj.edges[eid].b].push_back(eid);
    }

    long loops = 0;
    for (int start = 0; start < static_cast<int>(adj.edges.size()); ++start) {
        if (!adj.edges[start].is_boundary() || visited[start]) continue;
        ++loops;
        visited[start] = 1;

        // follow the face winding: corner k spans face[k] -> face[(k+1)%3]
        const auto [face0, corner0] = adj.edges[start].incident[0];
        int prev_vertex = mesh.faces[face0][corner0];
        int at = mesh.faces[face0][(corner0 + 1) % 3];
        int edge = start;
        int face = face0;

        while (true) {
            std::optional<int> next = next_boundary_edge_in_fan(mesh, adj, at, prev_vertex, face);
            if (next && *next == edge && vertex_boundary_edges[at].size() <= 2) {
                // dangling edge walked back onto itself (open fan both sides)
                next = std::nullopt;
            }
            if (!next || visited[*next]) {
                if (next && *next == start) break;  // closed the loop
                // nonmanifold junction: continue along any unvisited boundary edge
                next = std::nullopt;
                for (int cand : vertex_boundary_edges[at]) {
                    if (!visited[cand] && cand != edge) {
                        next = cand;
                        break;
                    }
                }
                if (!next) break;  // maximal walk exhausted, count as one cycle
            }
            edge = *next;
            visited[edge] = 1;
            const MeshEdge& e = adj.edges[edge];
            prev_vertex = at;
            at = e.a == at ? e.b : e.a;
            face = e.incident[0].first;
        }
    }
    return loops;
}

bool compute_vertex_manifold(const TriMesh& mesh, const EdgeAdjacency& adj) {
    for (int v = 0; v < static_cast<int>(mesh.vertices.size()); ++v) {
        const auto& incident = adj.vertex_faces[v];
        if (incident.size() <= 1) continue;

        // faces at v keyed by the opposite edge endpoint
        std::unordered_map<int, std::vector<int>> by_neighbor;
        for (size_t i = 0; i < incident.size(); ++i) {
            const auto& face = mesh.faces[incident[i]];
            for (int k = 0; k < 3; ++k) {
                if (face[k] == v) continue;
                by_neighbor[face[k]].push_back(static_cast<int>(i));
            }
        }

        UnionFind uf(incident.size());
        for (const auto& [neighbor, local_faces] : by_neighbor) {
            if (local_faces.size() > 2) return false;  // nonmanifold edge at v
            for (size_t i = 1; i < local_faces.size(); ++i)
                uf.unite(local_faces[0], local_faces[i]);
        }
        const int root = uf.find(0);
        for (size_t i = 1; i < incident.size(); ++i)
            if (uf.find(static_cast<int>(i)) != root) return false;  // split fan
    }
    return true;
}

// Attempts a consistent orientation via BFS across interior manifold edges.
bool compute_orientable(const TriMesh& mesh, const EdgeAdjacency& adj) {
    std::vector<int> orientation(mesh.faces.size(), 0);  // 0 unassigned, +1 keep, -1 flip
    std::vector<int> queue;
    for (int seed = 0; seed < static_cast<int>(mesh.faces.size()); ++seed) {
        if (orientation[seed] != 0) continue;
        orientation[seed] = 1;
        queue.assign(1, seed);
        while (!queue.empty()) {
            const int f = queue.back();
            queue.pop_back();
            const auto& face = mesh.faces[f];
            for (int k = 0; k < 3; ++k) {
                const int a = face[k];
                const int b = face[(k + 1) % 3];
                const MeshEdge& e = adj.edges[adj.edge_between(a, b)];
                if (e.incident.size() != 2) continue;
                const auto& other = e.incident[0].first == f ? e.incident[1] : e.incident[0];
                const auto& oface = mesh.faces[other.first];
                // consistently oriented neighbours traverse the edge oppositely
                const bool opposite = oface[other.second] == b && oface[(other.second + 1) % 3] == a;
                const int wanted = opposite ? orientation[f] : -orientation[f];
                if (orientation[other.first] == 0) {
                    orientation[other.first] = wanted;
                    queue.push_back(other.first);
                } else if (orientation[other.first] != wanted) {
                    return false;
                }
            }
        }
    }
    return true;
}

long count_face_components(const TriMesh& mesh) {
    if (mesh.faces.empty()) return 0;
    UnionFind uf(mesh.vertices.size());
    for (const auto& face : mesh.faces) {
        uf.unite(face[0], face[1]);
        uf.unite(face[0], face[2]);
    }
    std::vector<char> seen(mesh.vertices.size(), 0);
    long components = 0;
    for (const auto& face : mesh.faces) {
        const int root = uf.find(face[0]);
        if (!seen[root]) {
            seen[root] = 1;
            ++components;
        }
    }
    return components;
}

}  // namespace

TopologyInfo compute_topology(const TriMesh& mesh, const EdgeAdjacency& adj) {
    TopologyInfo info;
    info.n_vertices = static_cast<long>(mesh.vertices.size());
    info.n_edges = static_cast<long>(adj.edges.size());
    info.n_faces = static_cast<long>(mesh.faces.size());
    info.euler_characteristic = info.n_vertices - info.n_edges + info.n_faces;

    info.edge_manifold = true;
    for (const auto& e : adj.edges)
        if (!e.is_manifold()) info.edge_manifold = false;

    std::vector<char> face_on_boundary(mesh.faces.size(), 0);
    for (const auto& e : adj.edges)
        if (e.is_boundary()) face_on_boundary[e.incident[0].first] = 1;
    info.n_boundary_faces = std::count(face_on_boundary.begin(), face_on_boundary.end(), 1);

    info.n_boundary_loops = count_boundary_loops(mesh, adj);
    info.vertex_manifold = compute_vertex_manifold(mesh, adj);
    info.orientable = compute_orientable(mesh, adj);
    info.n_components = count_face_components(mesh);

    if (info.n_components == 1 && info.vertex_manifold && info.edge_manifold && info.orientable) {
        // chi = 2 - 2g - b for connected orientable manifolds
        const long doubled = 2 - info.euler_characteristic - info.n_boundary_loops;
        if (doubled >= 0 && doubled % 2 == 0) info.genus = doubled / 2;
    }
    return info;
}

TagSet evaluate_tags(const TopologyInfo& info, long n_faces) {
    TagSet tags;
    tags.disk = info.euler_characteristic == 1;
    tags.closed = info.n_boundary_loops == 0;
    tags.manifold = info.vertex_manifold && info.edge_manifold;
    tags.small = n_faces < 100;
    return tags;
}

std::vector<TriMesh> connected_components(const TriMesh& mesh) {
    if (mesh.faces.empty()) return {};

    UnionFind uf(mesh.vertices.size());
    for (const auto& face : mesh.faces) {
        uf.unite(face[0], face[1]);
        uf.unite(face[0], face[2]);
    }

    // group faces by component root, keyed in first-face order
    std::unordered_map<int, int> root_to_slot;
    std::vector<std::vector<int>> face_groups;
    for (int f = 0; f < static_cast<int>(mesh.faces.size()); ++f) {
        const int root = uf.find(mesh.faces[f][0]);
        auto [it, inserted] = root_to_slot.try_emplace(root, static_cast<int>(face_groups.size()));
        if (inserted) face_groups.emplace_back();
        face_groups[it->second].push_back(f);
    }

    std::vector<int> order(face_groups.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int lhs, int rhs) {
        if (face_groups[lhs].size() != face_groups[rhs].size())
            return face_groups[lhs].size() > face_groups[rhs].size();
        return face_groups[lhs].front() < face_groups[rhs].front();
    });

    std::vector<TriMesh> out;
    out.reserve(face_groups.size());
    std::vector<int> remap(mesh.vertices.size(), -1);
    for (const int slot : order) {
        TriMesh part;
        for (const int f : face_groups[slot]) {
            std::array<int, 3> face{};
            for (int k = 0; k < 3; ++k) {
                const int v = mesh.faces[f][k];
                if (remap[v] < 0) {
                    remap[v] = static_cast<int>(part.vertices.size());
                    part.vertices.push_back(mesh.vertices[v]);
                }
                face[k] = remap[v];
            }
            part.faces.push_back(face);
            if (mesh.has_uvs()) {
                part.uv_corners.push_back(mesh.uv(f, 0));
                part.uv_corners.push_back(mesh.uv(f, 1));
                part.uv_corners.push_back(mesh.uv(f, 2));
            }
        }
        for (const int f : face_groups[slot])
            for (int k = 0; k < 3; ++k) remap[mesh.faces[f][k]] = -1;
        out.push_back(std::move(part));
    }
    return out;
}

}  // namespace uvbench
