#include "support/oracle.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

namespace uvbench::testing {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double heron_area(double a, double b, double c) {
    // Kahan's stable ordering: a >= b >= c.
    if (a < b) std::swap(a, b);
    if (b < c) std::swap(b, c);
    if (a < b) std::swap(a, b);
    const double t = (a + (b + c)) * (c - (a - b)) * (c + (a - b)) * (a + (b - c));
    return 0.25 * std::sqrt(std::max(t, 0.0));
}

double area3(const Vec3& p0, const Vec3& p1, const Vec3& p2) {
    return heron_area(dist(p0, p1), dist(p1, p2), dist(p2, p0));
}

double shoelace(const Vec2& q0, const Vec2& q1, const Vec2& q2) {
    return 0.5 * (q0.x * (q1.y - q2.y) + q1.x * (q2.y - q0.y) + q2.x * (q0.y - q1.y));
}

double law_of_cosines(double opposite, double adj1, double adj2) {
    const double cosv = (adj1 * adj1 + adj2 * adj2 - opposite * opposite) / (2.0 * adj1 * adj2);
    return std::acos(std::clamp(cosv, -1.0, 1.0));
}

template <typename V>
std::array<double, 3> corner_angles(const V& p0, const V& p1, const V& p2) {
    const double a = dist(p1, p2);  // opposite corner 0
    const double b = dist(p2, p0);
    const double c = dist(p0, p1);
    return {law_of_cosines(a, b, c), law_of_cosines(b, c, a), law_of_cosines(c, a, b)};
}

Vec3 normalized(const Vec3& v) {
    const double n = norm(v);
    return {v.x / n, v.y / n, v.z / n};
}

double total_area3(const TriMesh& m) {
    double t = 0.0;
    for (const auto& f : m.faces) t += area3(m.vertices[f[0]], m.vertices[f[1]], m.vertices[f[2]]);
    return t;
}

double total_area_uv_abs(const TriMesh& m) {
    double t = 0.0;
    for (int f = 0; f < static_cast<int>(m.faces.size()); ++f) {
        t += std::abs(shoelace(m.uv(f, 0), m.uv(f, 1), m.uv(f, 2)));
    }
    return t;
}

std::vector<OracleTriangle> oracle_measures(const TriMesh& m) {
    std::vector<OracleTriangle> out;
    for (int f = 0; f < static_cast<int>(m.faces.size()); ++f) {
        const auto& face = m.faces[f];
        out.push_back(oracle_triangle(m.vertices[face[0]], m.vertices[face[1]],
                                      m.vertices[face[2]], m.uv(f, 0), m.uv(f, 1), m.uv(f, 2)));
    }
    return out;
}

}  // namespace

JacobiSV jacobi_singular_values(const Mat2& j) {
    const double s00 = j.m00 * j.m00 + j.m10 * j.m10;
    const double s01 = j.m00 * j.m01 + j.m10 * j.m11;
    const double s11 = j.m01 * j.m01 + j.m11 * j.m11;
    const double theta = 0.5 * std::atan2(2.0 * s01, s00 - s11);
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    const double l1 = c * c * s00 + 2.0 * c * s * s01 + s * s * s11;
    const double l2 = s * s * s00 - 2.0 * c * s * s01 + c * c * s11;
    JacobiSV sv;
    sv.sigma1 = std::sqrt(std::max(std::max(l1, l2), 0.0));
    sv.sigma2 = std::sqrt(std::max(std::min(l1, l2), 0.0));
    return sv;
}

OracleTriangle oracle_triangle(const Vec3& p0, const Vec3& p1, const Vec3& p2, const Vec2& q0,
                               const Vec2& q1, const Vec2& q2) {
    OracleTriangle t;
    t.area_3d = area3(p0, p1, p2);
    t.area_uv_signed = shoelace(q0, q1, q2);
    t.angles_3d = corner_angles(p0, p1, p2);
    if (!(t.area_3d > 0.0)) throw std::invalid_argument("oracle needs a nondegenerate triangle");

    t.uv_collapsed = t.area_uv_signed == 0.0 || dist(q0, q1) == 0.0 || dist(q1, q2) == 0.0 ||
                     dist(q2, q0) == 0.0;
    if (!t.uv_collapsed) t.angles_uv = corner_angles(q0, q1, q2);

    // 2D coordinates in a right-handed tangent frame anchored at p1.
    const Vec3 e1 = normalized(p2 - p1);
    const Vec3 n = normalized(cross(p2 - p1, p0 - p1));
    const Vec3 e2 = cross(n, e1);
    const Vec2 x2{dot(p2 - p1, e1), dot(p2 - p1, e2)};
    const Vec2 x0{dot(p0 - p1, e1), dot(p0 - p1, e2)};
    const Vec2 b2 = q2 - q1;
    const Vec2 b0 = q0 - q1;
    const double det = cross(x2, x0);
    Mat2 j;
    j.m00 = (b2.x * x0.y - b0.x * x2.y) / det;
    j.m01 = (b0.x * x2.x - b2.x * x0.x) / det;
    j.m10 = (b2.y * x0.y - b0.y * x2.y) / det;
    j.m11 = (b0.y * x2.x - b2.y * x0.x) / det;
    const JacobiSV sv = jacobi_singular_values(j);
    t.sigma1 = sv.sigma1;
    t.sigma2 = sv.sigma2;
    return t;
}

OracleMetrics oracle_metrics(const TriMesh& mesh) {
    const std::vector<OracleTriangle> tris = oracle_measures(mesh);
    const double t3 = total_area3(mesh);
    const double tuv = total_area_uv_abs(mesh);
    const double sigma_scale = std::sqrt(t3 / tuv);

    OracleMetrics m;
    m.max_area_distortion = -kInf;
    m.min_singular = kInf;
    m.max_singular = -kInf;
    m.max_angle_distortion = -kInf;
    m.resolution = -kInf;

    double discrepancy = 0.0;
    double area_sum = 0.0;
    double angle_num = 0.0;
    double dirichlet_num = 0.0;
    std::size_t flipped = 0;

    for (const OracleTriangle& t : tris) {
        const double a = t.area_3d / t3;
        const double auv = std::abs(t.area_uv_signed) / tuv;
        area_sum += a;
        discrepancy += std::abs(a - auv);
        if (t.area_uv_signed < 0.0) ++flipped;

        m.max_area_distortion =
            std::max(m.max_area_distortion, auv == 0.0 ? kInf : a / auv + auv / a - 2.0);

        const double s1 = t.sigma1 * sigma_scale;
        const double s2 = t.sigma2 * sigma_scale;
        m.min_singular = std::min(m.min_singular, s2);
        m.max_singular = std::max(m.max_singular, s1);
        m.max_angle_distortion = std::max(
            m.max_angle_distortion,
            t.sigma2 == 0.0 ? kInf : t.sigma1 / t.sigma2 + t.sigma2 / t.sigma1 - 2.0);

        double deviation = 2.0 * std::acos(-1.0);
        if (!t.uv_collapsed) {
            deviation = 0.0;
            for (int k = 0; k < 3; ++k) deviation += std::abs(t.angles_3d[k] - t.angles_uv[k]);
        }
        angle_num += a * deviation;

        if (s2 == 0.0) {
            dirichlet_num = kInf;
        } else if (!std::isinf(dirichlet_num)) {
            dirichlet_num +=
                a * 0.5 * (s1 * s1 + s2 * s2 + 1.0 / (s1 * s1) + 1.0 / (s2 * s2));
        }
    }

    m.avg_area_discrepancy = std::clamp(discrepancy / area_sum, 0.0, 2.0);
    m.pct_flipped = 100.0 * static_cast<double>(flipped) / static_cast<double>(tris.size());
    m.pct_flipped = std::min(m.pct_flipped, 100.0 - m.pct_flipped);
    m.avg_angle_discrepancy = std::clamp(angle_num / area_sum, 0.0, 2.0 * std::acos(-1.0));
    m.symmetric_dirichlet =
        std::isinf(dirichlet_num) ? kInf : std::max(dirichlet_num / area_sum, 2.0);
    m.max_area_distortion = std::max(m.max_area_distortion, 0.0);
    m.max_angle_distortion = std::max(m.max_angle_distortion, 0.0);

    // Resolution: original 3D scale, UVs refit to the unit square.
    Vec2 lo{kInf, kInf}, hi{-kInf, -kInf};
    for (const Vec2& uv : mesh.uv_corners) {
        lo = {std::min(lo.x, uv.x), std::min(lo.y, uv.y)};
        hi = {std::max(hi.x, uv.x), std::max(hi.y, uv.y)};
    }
    const double refit = 1.0 / std::max(hi.x - lo.x, hi.y - lo.y);
    for (const OracleTriangle& t : tris) {
        const double s2 = t.sigma2 * refit;
        m.resolution = std::max(m.resolution, s2 == 0.0 ? kInf : 1.0 / s2);
    }
    return m;
}

double oracle_cut_length(const TriMesh& candidate, const TriMesh& reference, double uv_epsilon) {
    assert(candidate.faces == reference.faces);
    std::map<std::pair<int, int>, std::vector<int>> edge_faces;
    for (int f = 0; f < static_cast<int>(reference.faces.size()); ++f) {
        for (int k = 0; k < 3; ++k) {
            int a = reference.faces[f][k];
            int b = reference.faces[f][(k + 1) % 3];
            if (a > b) std::swap(a, b);
            edge_faces[{a, b}].push_back(f);
        }
    }

    const auto uv_of = [&](int face, int vertex) {
        for (int k = 0; k < 3; ++k) {
            if (reference.faces[face][k] == vertex) return candidate.uv(face, k);
        }
        throw std::logic_error("vertex not in face");
    };

    const double scale = 1.0 / std::sqrt(total_area3(reference));
    double length = 0.0;
    for (const auto& [edge, faces] : edge_faces) {
        if (faces.size() < 2) continue;
        bool seam = false;
        for (std::size_t i = 0; i < faces.size() && !seam; ++i) {
            for (std::size_t j = i + 1; j < faces.size() && !seam; ++j) {
                seam = dist(uv_of(faces[i], edge.first), uv_of(faces[j], edge.first)) > uv_epsilon ||
                       dist(uv_of(faces[i], edge.second), uv_of(faces[j], edge.second)) > uv_epsilon;
            }
        }
        if (seam) {
            length += dist(reference.vertices[edge.first], reference.vertices[edge.second]) * scale;
        }
    }
    return length;
}

std::optional<double> oracle_correlation(const TriMesh& candidate, const TriMesh& reference) {
    const std::vector<OracleTriangle> cand = oracle_measures(candidate);
    const std::vector<OracleTriangle> ref = oracle_measures(reference);
    assert(cand.size() == ref.size());

    double weight = 0.0, mean_c = 0.0, mean_r = 0.0;
    for (std::size_t i = 0; i < cand.size(); ++i) {
        const double a = ref[i].area_3d;
        weight += 2.0 * a;
        mean_c += a * (cand[i].sigma1 + cand[i].sigma2);
        mean_r += a * (ref[i].sigma1 + ref[i].sigma2);
    }
    if (weight <= 0.0) return std::nullopt;
    mean_c /= weight;
    mean_r /= weight;

    double cov = 0.0, var_c = 0.0, var_r = 0.0;
    for (std::size_t i = 0; i < cand.size(); ++i) {
        const double a = ref[i].area_3d;
        for (const double pair : {0.0, 1.0}) {
            const double dc = (pair == 0.0 ? cand[i].sigma1 : cand[i].sigma2) - mean_c;
            const double dr = (pair == 0.0 ? ref[i].sigma1 : ref[i].sigma2) - mean_r;
            cov += a * dc * dr;
            var_c += a * dc * dc;
            var_r += a * dr * dr;
        }
    }
    if (var_c <= 0.0 || var_r <= 0.0) return std::nullopt;
    return std::clamp(std::abs(cov / std::sqrt(var_c * var_r) - 1.0), 0.0, 2.0);
}

}  // namespace uvbench::testing
