#include "core/tutte.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "core/error.hpp"
#include "core/topology.hpp"

namespace uvbench {
namespace {

void apply(const LinearSystem& s, const std::vector<double>& x, std::vector<double>& out) {
    for (int i = 0; i < s.n; ++i) {
        double acc = 0.0;
        for (int k = s.row_start[i]; k < s.row_start[i + 1]; ++k) {
            acc += s.val[k] * x[s.col[k]];
        }
        out[i] = acc;
    }
}

double max_norm(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

}  // namespace

std::vector<double> solve_spd(const LinearSystem& s, const std::vector<double>& rhs, double tol) {
    const int n = s.n;
    std::vector<double> x(n, 0.0);
    if (n == 0) return x;
    std::vector<double> r = rhs;
    std::vector<double> p = r;
    std::vector<double> ap(n);
    double rr = 0.0;
    for (double v : r) rr += v * v;
    const long max_iter = 10L * n;
    for (long iter = 0; iter < max_iter; ++iter) {
        if (max_norm(r) <= tol) return x;
        apply(s, p, ap);
        double pap = 0.0;
        for (int i = 0; i < n; ++i) pap += p[i] * ap[i];
        if (!(pap > 0.0)) raise(ErrorCode::solver_diverged, "system is not positive definite");
        const double alpha = rr / pap;
        double rr_next = 0.0;
        for (int i = 0; i < n; ++i) {
            x[i] += alpha * p[i];
            r[i] -= alpha * ap[i];
            rr_next += r[i] * r[i];
        }
        const double beta = rr_next / rr;
        rr = rr_next;
        for (int i = 0; i < n; ++i) p[i] = r[i] + beta * p[i];
    }
    if (max_norm(r) <= tol) return x;
    raise(ErrorCode::solver_diverged,
          "residual " + std::to_string(max_norm(r)) + " after " + std::to_string(max_iter) +
              " iterations");
}

std::vector<Vec2> tutte_embed(const TriMesh& mesh) {
    mesh.validate();
    const EdgeAdjacency adj = build_adjacency(mesh);
    const TopologyInfo topo = compute_topology(mesh, adj);
    if (topo.n_components != 1 || !topo.vertex_manifold || !topo.edge_manifold ||
        topo.euler_characteristic != 1 || topo.n_boundary_loops != 1) {
        raise(ErrorCode::not_a_disk, "mesh is not a disk (chi=" +
                                         std::to_string(topo.euler_characteristic) + ", loops=" +
                                         std::to_string(topo.n_boundary_loops) + ")");
    }

    const int nv = static_cast<int>(mesh.vertices.size());

    // Walk the boundary loop in face-winding direction. On a manifold mesh
    // each boundary vertex has exactly one outgoing boundary half-edge.
    std::vector<int> next(nv, -1);
    int start = -1;
    for (const MeshEdge& e : adj.edges) {
        if (!e.is_boundary()) continue;
        const auto [f, c] = e.incident.front();
        const int from = mesh.faces[f][c];
        const int to = mesh.faces[f][(c + 1) % 3];
        if (next[from] != -1) raise(ErrorCode::not_a_disk, "tangled boundary");
        next[from] = to;
        if (start < 0 || from < start) start = from;
    }
    if (start < 0) raise(ErrorCode::not_a_disk, "no boundary edge");

    std::vector<int> loop;
    loop.reserve(static_cast<std::size_t>(topo.n_boundary_faces) + 3);
    for (int v = start;;) {
        loop.push_back(v);
        v = next[v];
        if (v < 0) raise(ErrorCode::not_a_disk, "open boundary chain");
        if (v == start) break;
        if (loop.size() > static_cast<std::size_t>(nv)) {
            raise(ErrorCode::not_a_disk, "boundary walk does not close");
        }
    }
    if (loop.size() < 3) raise(ErrorCode::not_a_disk, "boundary loop has fewer than 3 vertices");

    std::vector<double> arc(loop.size() + 1, 0.0);
    for (std::size_t i = 0; i < loop.size(); ++i) {
        const Vec3& a = mesh.vertices[loop[i]];
        const Vec3& b = mesh.vertices[loop[(i + 1) % loop.size()]];
        arc[i + 1] = arc[i] + dist(a, b);
    }
    const double total = arc.back();

    std::vector<Vec2> uv(nv, Vec2{0.0, 0.0});
    std::vector<char> on_boundary(nv, 0);
    for (std::size_t i = 0; i < loop.size(); ++i) {
        const double t = total > 0.0 ? arc[i] / total : static_cast<double>(i) / loop.size();
        const double angle = 2.0 * std::numbers::pi * t;
        uv[loop[i]] = Vec2{0.5 + 0.5 * std::cos(angle), 0.5 + 0.5 * std::sin(angle)};
        on_boundary[loop[i]] = 1;
    }

    // Unique vertex neighborhoods from the edge list.
    std::vector<std::vector<int>> neighbors(nv);
    for (const MeshEdge& e : adj.edges) {
        neighbors[e.a].push_back(e.b);
        neighbors[e.b].push_back(e.a);
    }

    std::vector<int> unknown(nv, -1);
    std::vector<int> interior;
    for (int v = 0; v < nv; ++v) {
        if (on_boundary[v]) continue;
        if (neighbors[v].empty()) raise(ErrorCode::not_a_disk, "isolated vertex");
        unknown[v] = static_cast<int>(interior.size());
        interior.push_back(v);
    }

    LinearSystem sys;
    sys.n = static_cast<int>(interior.size());
    sys.row_start.assign(sys.n + 1, 0);
    sys.rhs_u.assign(sys.n, 0.0);
    sys.rhs_v.assign(sys.n, 0.0);
    for (int i = 0; i < sys.n; ++i) {
        const int v = interior[i];
        sys.row_start[i + 1] = sys.row_start[i];
        sys.col.push_back(i);
        sys.val.push_back(static_cast<double>(neighbors[v].size()));
        ++sys.row_start[i + 1];
        for (int w : neighbors[v]) {
            if (unknown[w] >= 0) {
                sys.col.push_back(unknown[w]);
                sys.val.push_back(-1.0);
                ++sys.row_start[i + 1];
            } else {
                sys.rhs_u[i] += uv[w].x;
                sys.rhs_v[i] += uv[w].y;
            }
        }
    }

    const std::vector<double> xs = solve_spd(sys, sys.rhs_u);
    const std::vector<double> ys = solve_spd(sys, sys.rhs_v);
    for (int i = 0; i < sys.n; ++i) uv[interior[i]] = Vec2{xs[i], ys[i]};

    std::vector<Vec2> corners;
    corners.reserve(3 * mesh.faces.size());
    for (const auto& face : mesh.faces) {
        for (int k = 0; k < 3; ++k) corners.push_back(uv[face[k]]);
    }
    return corners;
}

}  // namespace uvbench
