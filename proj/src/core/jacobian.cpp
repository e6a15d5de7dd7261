#include "core/jacobian.hpp"

#include <cmath>

#include "core/error.hpp"

namespace uvbench {

std::array<Vec2, 3> local_frame(const Vec3& p0, const Vec3& p1, const Vec3& p2) {
    const Vec3 e1 = p1 - p0;
    const Vec3 e2 = p2 - p0;
    const double len = norm(e1);
    if (len == 0.0) raise(ErrorCode::degenerate_triangle, "zero-length base edge");
    const double x2 = dot(e2, e1) / len;
    const double y2 = norm(cross(e1, e2)) / len;  // 2*area / base
    if (y2 == 0.0 || !std::isfinite(len) || !std::isfinite(x2) || !std::isfinite(y2))
        raise(ErrorCode::degenerate_triangle, "triangle has no usable area");
    return {Vec2{0.0, 0.0}, Vec2{len, 0.0}, Vec2{x2, y2}};
}

Mat2 jacobian(const std::array<Vec2, 3>& frame, const std::array<Vec2, 3>& uv) {
    const Vec2 e1 = frame[1] - frame[0];
    const Vec2 e2 = frame[2] - frame[0];
    const Vec2 u1 = uv[1] - uv[0];
    const Vec2 u2 = uv[2] - uv[0];
    const double det = cross(e1, e2);
    if (det == 0.0) raise(ErrorCode::degenerate_triangle, "degenerate frame");
    // J = [u1 u2] * [e1 e2]^-1, columns are images of the frame edges.
    const double inv = 1.0 / det;
    Mat2 j;
    j.m00 = (u1.x * e2.y - u2.x * e1.y) * inv;
    j.m01 = (u2.x * e1.x - u1.x * e2.x) * inv;
    j.m10 = (u1.y * e2.y - u2.y * e1.y) * inv;
    j.m11 = (u2.y * e1.x - u1.y * e2.x) * inv;
    return j;
}

SingularValues singular_values(const Mat2& j) {
    const double e = 0.5 * (j.m00 + j.m11);
    const double f = 0.5 * (j.m00 - j.m11);
    const double g = 0.5 * (j.m10 + j.m01);
    const double h = 0.5 * (j.m10 - j.m01);
    const double q = std::sqrt(e * e + h * h);
    const double r = std::sqrt(f * f + g * g);
    SingularValues sv;
    sv.sigma1 = q + r;
    sv.sigma2 = std::abs(q - r);
    const double det = j.det();
    sv.det_sign = det > 0.0 ? 1 : (det < 0.0 ? -1 : 0);
    return sv;
}

std::vector<TriangleMeasures> compute_measures(const TriMesh& mesh,
                                               double degenerate_area_factor) {
    const double total3 = total_area_3d(mesh);
    const double area_floor = degenerate_area_factor * total3;

    std::vector<TriangleMeasures> out;
    out.reserve(mesh.faces.size());
    for (int f = 0; f < static_cast<int>(mesh.faces.size()); ++f) {
        const auto& face = mesh.faces[f];
        const Vec3& p0 = mesh.vertices[face[0]];
        const Vec3& p1 = mesh.vertices[face[1]];
        const Vec3& p2 = mesh.vertices[face[2]];
        const std::array<Vec2, 3> uv = {mesh.uv(f, 0), mesh.uv(f, 1), mesh.uv(f, 2)};

        TriangleMeasures m;
        m.area_3d = triangle_area_3d(mesh, f);
        m.area_uv_signed = triangle_area_uv_signed(mesh, f);
        m.det_sign = m.area_uv_signed > 0.0 ? 1 : (m.area_uv_signed < 0.0 ? -1 : 0);
        m.angles_3d = triangle_angles(p0, p1, p2);
        m.angles_uv = triangle_angles(uv[0], uv[1], uv[2]);
        m.degenerate_3d = !(m.area_3d >= area_floor) || !std::isfinite(m.area_3d);

        if (!m.degenerate_3d) {
            try {
                const auto frame = local_frame(p0, p1, p2);
                const auto sv = singular_values(jacobian(frame, uv));
                if (std::isfinite(sv.sigma1) && std::isfinite(sv.sigma2)) {
                    m.sigma1 = sv.sigma1;
                    m.sigma2 = sv.sigma2;
                } else {
                    m.degenerate_3d = true;
                }
            } catch (const Error&) {
                m.degenerate_3d = true;
            }
        }
        out.push_back(m);
    }
    return out;
}

}  // namespace uvbench
