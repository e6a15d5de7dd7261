#pragma once

#include <array>
#include <optional>
#include <vector>

#include "core/mesh.hpp"
#include "core/vec.hpp"

namespace uvbench {

struct Mat2 {
    double m00 = 0.0, m01 = 0.0;
    double m10 = 0.0, m11 = 0.0;

    double det() const { return m00 * m11 - m01 * m10; }
};

// Isometric flattening of a 3D triangle into the plane: q0 = (0,0),
// q1 = (|p1-p0|, 0), q2 in the upper half plane. The frame is right-handed
// with respect to the face normal implied by the corner order, so a positive
// Jacobian determinant means the UV triangle preserves the surface winding.
// Throws degenerate_triangle on a zero-length base edge or zero area.
std::array<Vec2, 3> local_frame(const Vec3& p0, const Vec3& p1, const Vec3& p2);

// Linear part of the affine map taking the frame triangle onto the uv
// triangle; the translation is discarded.
Mat2 jacobian(const std::array<Vec2, 3>& frame, const std::array<Vec2, 3>& uv);

struct SingularValues {
    double sigma1 = 0.0;  // sigma1 >= sigma2 >= 0
    double sigma2 = 0.0;
    int det_sign = 0;
};

// Closed-form 2x2 SVD; exact for the hot per-triangle loop. The zero matrix
// yields (0, 0, 0).
SingularValues singular_values(const Mat2& j);

// Everything the metric suite needs about one triangle.
struct TriangleMeasures {
    double area_3d = 0.0;
    double area_uv_signed = 0.0;  // |.| is the UV area, sign feeds flip counting
    double sigma1 = 0.0;          // valid only when !degenerate_3d
    double sigma2 = 0.0;
    int det_sign = 0;             // sign(area_uv_signed)
    std::optional<TriangleAngles> angles_3d;
    std::optional<TriangleAngles> angles_uv;
    bool degenerate_3d = false;   // mesh-side area too small for a stable map
};

// Per-face measures for a mesh with UVs. A triangle is flagged degenerate_3d
// when its 3D area falls below degenerate_area_factor times the total 3D area
// or the frame/Jacobian computation produces non-finite values; metric
// consumers apply their own skip rules to those.
std::vector<TriangleMeasures> compute_measures(const TriMesh& mesh,
                                               double degenerate_area_factor = 1e-12);

}  // namespace uvbench
