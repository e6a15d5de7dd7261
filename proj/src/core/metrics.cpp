#include "core/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_set>

#include "core/error.hpp"

namespace uvbench {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kTwoPi = 6.283185307179586476925286766559;
constexpr double kPositionTolerance = 1e-5;

double uv_area(const TriangleMeasures& t) { return std::abs(t.area_uv_signed); }

}  // namespace

double max_area_distortion(std::span<const TriangleMeasures> measures) {
    double worst = -1.0;
    for (const TriangleMeasures& t : measures) {
        if (t.degenerate_3d) continue;
        const double a = t.area_3d;
        const double b = uv_area(t);
        worst = std::max(worst, b == 0.0 ? kInf : a / b + b / a - 2.0);
    }
    if (worst < 0.0) raise(ErrorCode::all_degenerate, "no usable triangles for area distortion");
    return std::max(worst, 0.0);
}

double avg_area_discrepancy(std::span<const TriangleMeasures> measures) {
    double num = 0.0;
    double den = 0.0;
    for (const TriangleMeasures& t : measures) {
        num += std::abs(t.area_3d - uv_area(t));
        den += t.area_3d;
    }
    if (den <= 0.0) raise(ErrorCode::all_degenerate, "zero total area");
    return std::clamp(num / den, 0.0, 2.0);
}

std::pair<double, double> singular_extrema(std::span<const TriangleMeasures> measures) {
    double lo = kInf;
    double hi = -kInf;
    bool any = false;
    for (const TriangleMeasures& t : measures) {
        if (t.degenerate_3d) continue;
        any = true;
        lo = std::min(lo, t.sigma2);
        hi = std::max(hi, t.sigma1);
    }
    if (!any) raise(ErrorCode::all_degenerate, "no usable triangles for singular values");
    return {lo, hi};
}

double pct_flipped(std::span<const TriangleMeasures> measures) {
    if (measures.empty()) raise(ErrorCode::all_degenerate, "no triangles");
    std::size_t flipped = 0;
    for (const TriangleMeasures& t : measures) {
        if (t.det_sign < 0) ++flipped;
    }
    const double x = 100.0 * static_cast<double>(flipped) / static_cast<double>(measures.size());
    return std::min(x, 100.0 - x);
}

double max_angle_distortion(std::span<const TriangleMeasures> measures) {
    double worst = -1.0;
    for (const TriangleMeasures& t : measures) {
        if (t.degenerate_3d) continue;
        worst = std::max(worst,
                         t.sigma2 == 0.0 ? kInf : t.sigma1 / t.sigma2 + t.sigma2 / t.sigma1 - 2.0);
    }
    if (worst < 0.0) raise(ErrorCode::all_degenerate, "no usable triangles for angle distortion");
    return std::max(worst, 0.0);
}

double avg_angle_discrepancy(std::span<const TriangleMeasures> measures) {
    double num = 0.0;
    double den = 0.0;
    for (const TriangleMeasures& t : measures) {
        if (t.degenerate_3d || !t.angles_3d) continue;
        double deviation = kTwoPi;
        if (t.angles_uv) {
            deviation = 0.0;
            for (int k = 0; k < 3; ++k) {
                deviation += std::abs((*t.angles_3d)[k] - (*t.angles_uv)[k]);
            }
        }
        num += t.area_3d * deviation;
        den += t.area_3d;
    }
    if (den <= 0.0) raise(ErrorCode::all_degenerate, "no usable triangles for angle discrepancy");
    return std::clamp(num / den, 0.0, kTwoPi);
}

double symmetric_dirichlet(std::span<const TriangleMeasures> measures) {
    double num = 0.0;
    double den = 0.0;
    for (const TriangleMeasures& t : measures) {
        if (t.degenerate_3d) continue;
        den += t.area_3d;
        if (t.sigma2 == 0.0) {
            num = kInf;
            continue;
        }
        const double s1 = t.sigma1 * t.sigma1;
        const double s2 = t.sigma2 * t.sigma2;
        num += t.area_3d * 0.5 * (s1 + s2 + 1.0 / s1 + 1.0 / s2);
    }
    if (den <= 0.0) raise(ErrorCode::all_degenerate, "no usable triangles for dirichlet energy");
    return std::isinf(num) ? kInf : std::max(num / den, 2.0);
}

double resolution(const TriMesh& original_mesh) {
    if (!original_mesh.has_uvs()) raise(ErrorCode::invalid_argument, "resolution needs UVs");

    Vec2 lo{kInf, kInf};
    Vec2 hi{-kInf, -kInf};
    for (const Vec2& uv : original_mesh.uv_corners) {
        lo.x = std::min(lo.x, uv.x);
        lo.y = std::min(lo.y, uv.y);
        hi.x = std::max(hi.x, uv.x);
        hi.y = std::max(hi.y, uv.y);
    }
    const double extent = std::max(hi.x - lo.x, hi.y - lo.y);
    if (!(extent > 0.0)) return kInf;

    TriMesh fitted = original_mesh;
    const double scale = 1.0 / extent;
    for (Vec2& uv : fitted.uv_corners) {
        uv = Vec2{(uv.x - lo.x) * scale, (uv.y - lo.y) * scale};
    }

    double worst = -1.0;
    for (const TriangleMeasures& t : compute_measures(fitted)) {
        if (t.degenerate_3d) continue;
        worst = std::max(worst, t.sigma2 == 0.0 ? kInf : 1.0 / t.sigma2);
    }
    if (worst < 0.0) raise(ErrorCode::all_degenerate, "no usable triangles for resolution");
    return worst;
}

std::optional<double> artist_correlation(std::span<const TriangleMeasures> candidate,
                                         std::span<const TriangleMeasures> reference) {
    if (candidate.size() != reference.size()) {
        raise(ErrorCode::correspondence_failure, "triangle counts differ");
    }

    double weight = 0.0;
    double mean_c = 0.0;
    double mean_r = 0.0;
    for (std::size_t i = 0; i < candidate.size(); ++i) {
        const TriangleMeasures& c = candidate[i];
        const TriangleMeasures& r = reference[i];
        if (c.degenerate_3d || r.degenerate_3d) continue;
        const double a = r.area_3d;
        weight += 2.0 * a;
        mean_c += a * (c.sigma1 + c.sigma2);
        mean_r += a * (r.sigma1 + r.sigma2);
    }
    if (weight <= 0.0) return std::nullopt;
    mean_c /= weight;
    mean_r /= weight;

    double cov = 0.0;
    double var_c = 0.0;
    double var_r = 0.0;
    for (std::size_t i = 0; i < candidate.size(); ++i) {
        const TriangleMeasures& c = candidate[i];
        const TriangleMeasures& r = reference[i];
        if (c.degenerate_3d || r.degenerate_3d) continue;
        const double a = r.area_3d;
        const double dc1 = c.sigma1 - mean_c;
        const double dc2 = c.sigma2 - mean_c;
        const double dr1 = r.sigma1 - mean_r;
        const double dr2 = r.sigma2 - mean_r;
        cov += a * (dc1 * dr1 + dc2 * dr2);
        var_c += a * (dc1 * dc1 + dc2 * dc2);
        var_r += a * (dr1 * dr1 + dr2 * dr2);
    }
    // Variance at the level of per-face rounding noise (~eps * sigma per
    // sample) means the distribution is constant by construction; treat it
    // as zero rather than correlating noise.
    const double floor_c = 1e-24 * weight * mean_c * mean_c;
    const double floor_r = 1e-24 * weight * mean_r * mean_r;
    if (var_c <= floor_c || var_r <= floor_r) return std::nullopt;
    const double corr = cov / std::sqrt(var_c * var_r);
    if (!std::isfinite(corr)) return std::nullopt;
    return std::clamp(std::abs(corr - 1.0), 0.0, 2.0);
}

namespace {

bool positions_match(const Vec3& a, const Vec3& b) {
    return std::abs(a.x - b.x) <= kPositionTolerance && std::abs(a.y - b.y) <= kPositionTolerance &&
           std::abs(a.z - b.z) <= kPositionTolerance;
}

bool faces_correspond(const TriMesh& candidate, const TriMesh& reference) {
    if (candidate.faces.size() != reference.faces.size()) return false;
    for (std::size_t f = 0; f < reference.faces.size(); ++f) {
        for (int k = 0; k < 3; ++k) {
            const Vec3& pc = candidate.vertices[candidate.faces[f][k]];
            const Vec3& pr = reference.vertices[reference.faces[f][k]];
            if (!positions_match(pc, pr)) return false;
        }
    }
    return true;
}

}  // namespace

bool detect_remeshed(const TriMesh& candidate, const TriMesh& reference) {
    if (candidate.vertices.size() != reference.vertices.size()) return true;
    return !faces_correspond(candidate, reference);
}

double cut_length(const TriMesh& candidate, const TriMesh& reference,
                  const EdgeAdjacency& reference_adj, double uv_epsilon) {
    if (!candidate.has_uvs()) raise(ErrorCode::invalid_argument, "cut length needs candidate UVs");
    if (!faces_correspond(candidate, reference)) {
        raise(ErrorCode::correspondence_failure, "candidate does not match reference connectivity");
    }

    const double total = total_area_3d(reference);
    if (!(total > 0.0)) raise(ErrorCode::zero_area, "reference mesh has zero area");
    const double scale = 1.0 / std::sqrt(total);

    // UV of a reference vertex as seen from one incident candidate face. The
    // candidate may renumber vertices (an explicitly cut mesh does), so the
    // lookup goes through the face corner, never the vertex index.
    const auto corner_uv = [&](int face, int ref_vertex) -> Vec2 {
        for (int k = 0; k < 3; ++k) {
            if (reference.faces[face][k] == ref_vertex) return candidate.uv(face, k);
        }
        raise(ErrorCode::internal, "vertex not found in its incident face");
    };

    double length = 0.0;
    for (const MeshEdge& e : reference_adj.edges) {
        if (e.is_boundary()) continue;
        bool seam = false;
        for (std::size_t i = 0; i + 1 < e.incident.size() && !seam; ++i) {
            const Vec2 ua = corner_uv(e.incident[i].first, e.a);
            const Vec2 ub = corner_uv(e.incident[i].first, e.b);
            for (std::size_t j = i + 1; j < e.incident.size() && !seam; ++j) {
                const Vec2 va = corner_uv(e.incident[j].first, e.a);
                const Vec2 vb = corner_uv(e.incident[j].first, e.b);
                seam = dist(ua, va) > uv_epsilon || dist(ub, vb) > uv_epsilon;
            }
        }
        if (seam) length += dist(reference.vertices[e.a], reference.vertices[e.b]) * scale;
    }
    return length;
}

double artist_cut_match(double cut, double artist_cut) {
    return std::max(0.0, cut - artist_cut);
}

MeshMetrics measure_pair(const TriMesh& candidate, const TriMesh& reference, double tiny_area) {
    if (!candidate.has_uvs()) raise(ErrorCode::invalid_argument, "candidate has no UVs");
    for (const Vec2& uv : candidate.uv_corners) {
        if (!is_finite(uv)) raise(ErrorCode::invalid_argument, "candidate has non-finite UVs");
    }

    const auto [ncand, cand_scale] = normalize_areas(candidate, tiny_area);
    const std::vector<TriangleMeasures> cm = compute_measures(ncand);

    MeshMetrics m;
    m.max_area_distortion = max_area_distortion(cm);
    m.avg_area_discrepancy = avg_area_discrepancy(cm);
    std::tie(m.min_singular, m.max_singular) = singular_extrema(cm);
    m.pct_flipped = pct_flipped(cm);
    m.max_angle_distortion = max_angle_distortion(cm);
    m.avg_angle_discrepancy = avg_angle_discrepancy(cm);
    m.symmetric_dirichlet = symmetric_dirichlet(cm);
    m.resolution = resolution(candidate);
    m.remeshed = detect_remeshed(candidate, reference);

    std::optional<std::vector<TriangleMeasures>> rm;
    std::optional<double> artist_cut;
    const EdgeAdjacency ref_adj = build_adjacency(reference);
    if (reference.has_uvs()) {
        try {
            const auto [nref, ref_scale] = normalize_areas(reference, tiny_area);
            rm = compute_measures(nref);
            artist_cut = cut_length(reference, reference, ref_adj);
        } catch (const Error&) {
            rm.reset();
            artist_cut.reset();
        }
    }
    if (!m.remeshed) {
        m.cut_length = cut_length(candidate, reference, ref_adj);
        if (artist_cut) m.artist_cut_match = artist_cut_match(*m.cut_length, *artist_cut);
        if (rm) m.artist_correlation = artist_correlation(cm, *rm);
    }
    return m;
}

std::vector<std::string> select_interesting(std::span<const ReportedValues> rows,
                                            std::span<const std::string> hand_picked) {
    const auto argmax = [&](auto&& getter) -> const std::string* {
        const std::string* best_id = nullptr;
        double best = -kInf;
        bool best_finite = false;
        for (const ReportedValues& row : rows) {
            const std::optional<double> v = getter(row);
            if (!v || std::isnan(*v)) continue;
            const bool finite = std::isfinite(*v);
            const bool wins = best_id == nullptr || (finite && !best_finite) ||
                              (finite == best_finite && *v > best);
            if (wins) {
                best_id = &row.id;
                best = *v;
                best_finite = finite;
            }
        }
        return best_id;
    };

    std::vector<std::string> picked;
    std::unordered_set<std::string> seen;
    const auto add = [&](const std::string& id) {
        if (seen.insert(id).second) picked.push_back(id);
    };

    for (const std::string& id : hand_picked) add(id);
    if (const std::string* id = argmax([](const ReportedValues& r) { return r.artist_correlation; }))
        add(*id);
    if (const std::string* id = argmax([](const ReportedValues& r) { return r.avg_area_discrepancy; }))
        add(*id);
    if (const std::string* id =
            argmax([](const ReportedValues& r) { return r.avg_angle_discrepancy; }))
        add(*id);
    if (const std::string* id = argmax([](const ReportedValues& r) { return r.pct_flipped; }))
        add(*id);

    // Stable output: manifest order first, then hand-picked ids that are not
    // part of this run.
    std::vector<std::string> ordered;
    ordered.reserve(picked.size());
    for (const ReportedValues& row : rows) {
        if (seen.count(row.id) && std::find(ordered.begin(), ordered.end(), row.id) == ordered.end())
            ordered.push_back(row.id);
    }
    for (const std::string& id : picked) {
        if (std::find(ordered.begin(), ordered.end(), id) == ordered.end()) ordered.push_back(id);
    }
    return ordered;
}

}  // namespace uvbench
