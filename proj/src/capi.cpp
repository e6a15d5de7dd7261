#include "uvbench/uvbench.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <new>
#include <string>
#include <utility>
#include <vector>

#include "core/error.hpp"
#include "core/mesh.hpp"
#include "core/metrics.hpp"
#include "core/obj_io.hpp"
#include "core/runner.hpp"
#include "core/topology.hpp"

struct uvbench_mesh {
    uvbench::TriMesh mesh;
};

namespace {

thread_local std::string g_last_error;

uvbench_status status_from(uvbench::ErrorCode code) {
    using uvbench::ErrorCode;
    switch (code) {
        case ErrorCode::invalid_argument: return UVBENCH_ERR_INVALID_ARGUMENT;
        case ErrorCode::io: return UVBENCH_ERR_IO;
        case ErrorCode::malformed_record: return UVBENCH_ERR_MALFORMED_RECORD;
        case ErrorCode::mixed_uv_presence: return UVBENCH_ERR_MIXED_UV_PRESENCE;
        case ErrorCode::zero_area: return UVBENCH_ERR_ZERO_AREA;
        case ErrorCode::degenerate_triangle: return UVBENCH_ERR_DEGENERATE_TRIANGLE;
        case ErrorCode::all_degenerate: return UVBENCH_ERR_ALL_DEGENERATE;
        case ErrorCode::uv_mismatch: return UVBENCH_ERR_UV_MISMATCH;
        case ErrorCode::not_a_disk: return UVBENCH_ERR_NOT_A_DISK;
        case ErrorCode::solver_diverged: return UVBENCH_ERR_SOLVER_DIVERGED;
        case ErrorCode::remeshed_mesh: return UVBENCH_ERR_REMESHED_MESH;
        case ErrorCode::zero_variance: return UVBENCH_ERR_ZERO_VARIANCE;
        case ErrorCode::correspondence_failure: return UVBENCH_ERR_CORRESPONDENCE;
        case ErrorCode::manifest_error: return UVBENCH_ERR_MANIFEST;
        case ErrorCode::output_io_error: return UVBENCH_ERR_OUTPUT_IO;
        case ErrorCode::timeout: return UVBENCH_ERR_TIMEOUT;
        case ErrorCode::internal: return UVBENCH_ERR_INTERNAL;
    }
    return UVBENCH_ERR_UNKNOWN;
}

template <typename Fn>
uvbench_status guarded(Fn&& fn) {
    try {
        fn();
        g_last_error.clear();
        return UVBENCH_OK;
    } catch (const uvbench::Error& e) {
        g_last_error = e.what();
        return status_from(e.code());
    } catch (const std::bad_alloc&) {
        g_last_error = "out of memory";
        return UVBENCH_ERR_INTERNAL;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return UVBENCH_ERR_UNKNOWN;
    } catch (...) {
        g_last_error = "unknown error";
        return UVBENCH_ERR_UNKNOWN;
    }
}

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (out) std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

std::string join_log(const std::vector<std::pair<std::string, std::string>>& items) {
    std::string log;
    for (const auto& [id, reason] : items) {
        log += id;
        log += ": ";
        log += reason;
        log += '\n';
    }
    return log;
}

uvbench::TagFilter filter_from(int v) {
    if (v > 0) return uvbench::TagFilter::require;
    if (v < 0) return uvbench::TagFilter::forbid;
    return uvbench::TagFilter::ignore;
}

}  // namespace

extern "C" {

const char* uvbench_version(void) { return UVBENCH_VERSION_STRING; }

const char* uvbench_last_error(void) { return g_last_error.c_str(); }

void uvbench_string_free(char* text) { std::free(text); }

uvbench_status uvbench_mesh_load(const char* path, uvbench_mesh** out_mesh) {
    return guarded([&] {
        if (!path || !out_mesh) uvbench::raise(uvbench::ErrorCode::invalid_argument, "null argument");
        auto handle = std::make_unique<uvbench_mesh>();
        handle->mesh = uvbench::to_trimesh(uvbench::parse_obj_file(path));
        *out_mesh = handle.release();
    });
}

void uvbench_mesh_free(uvbench_mesh* mesh) { delete mesh; }

long uvbench_mesh_vertex_count(const uvbench_mesh* mesh) {
    return mesh ? static_cast<long>(mesh->mesh.vertices.size()) : -1;
}

long uvbench_mesh_face_count(const uvbench_mesh* mesh) {
    return mesh ? static_cast<long>(mesh->mesh.faces.size()) : -1;
}

int uvbench_mesh_has_uvs(const uvbench_mesh* mesh) {
    return mesh && mesh->mesh.has_uvs() ? 1 : 0;
}

uvbench_status uvbench_mesh_topology(const uvbench_mesh* mesh, uvbench_topology_info* out_info) {
    return guarded([&] {
        if (!mesh || !out_info) {
            uvbench::raise(uvbench::ErrorCode::invalid_argument, "null argument");
        }
        const uvbench::EdgeAdjacency adj = uvbench::build_adjacency(mesh->mesh);
        const uvbench::TopologyInfo t = uvbench::compute_topology(mesh->mesh, adj);
        const uvbench::TagSet tags =
            uvbench::evaluate_tags(t, static_cast<long>(mesh->mesh.faces.size()));
        uvbench_topology_info info{};
        info.n_vertices = t.n_vertices;
        info.n_edges = t.n_edges;
        info.n_faces = t.n_faces;
        info.euler_characteristic = t.euler_characteristic;
        info.n_boundary_loops = t.n_boundary_loops;
        info.n_boundary_faces = t.n_boundary_faces;
        info.n_components = t.n_components;
        info.vertex_manifold = t.vertex_manifold ? 1 : 0;
        info.edge_manifold = t.edge_manifold ? 1 : 0;
        info.orientable = t.orientable ? 1 : 0;
        info.has_genus = t.genus.has_value() ? 1 : 0;
        info.genus = t.genus.value_or(0);
        info.tag_disk = tags.disk ? 1 : 0;
        info.tag_closed = tags.closed ? 1 : 0;
        info.tag_manifold = tags.manifold ? 1 : 0;
        info.tag_small = tags.small ? 1 : 0;
        *out_info = info;
    });
}

uvbench_status uvbench_measure_pair(const uvbench_mesh* candidate, const uvbench_mesh* reference,
                                    uvbench_metrics* out_metrics) {
    return guarded([&] {
        if (!candidate || !reference || !out_metrics) {
            uvbench::raise(uvbench::ErrorCode::invalid_argument, "null argument");
        }
        const uvbench::MeshMetrics m = uvbench::measure_pair(candidate->mesh, reference->mesh);
        uvbench_metrics r{};
        r.max_area_distortion = m.max_area_distortion;
        r.avg_area_discrepancy = m.avg_area_discrepancy;
        r.min_singular_value = m.min_singular;
        r.max_singular_value = m.max_singular;
        r.pct_flipped = m.pct_flipped;
        r.max_angle_distortion = m.max_angle_distortion;
        r.avg_angle_discrepancy = m.avg_angle_discrepancy;
        r.symmetric_dirichlet = m.symmetric_dirichlet;
        r.resolution = m.resolution;
        r.has_artist_correlation = m.artist_correlation.has_value() ? 1 : 0;
        r.artist_correlation = m.artist_correlation.value_or(0.0);
        r.remeshed = m.remeshed ? 1 : 0;
        r.has_cut_length = m.cut_length.has_value() ? 1 : 0;
        r.cut_length = m.cut_length.value_or(0.0);
        r.has_artist_cut_length_match = m.artist_cut_match.has_value() ? 1 : 0;
        r.artist_cut_length_match = m.artist_cut_match.value_or(0.0);
        *out_metrics = r;
    });
}

uvbench_status uvbench_measure(const uvbench_run_options* options,
                               uvbench_run_summary* out_summary, char** out_log) {
    return guarded([&] {
        if (!options || !options->manifest_path || !options->out_dir) {
            uvbench::raise(uvbench::ErrorCode::invalid_argument, "null argument");
        }
        uvbench::RunConfig config;
        config.manifest_path = options->manifest_path;
        config.out_dir = options->out_dir;
        config.disk = filter_from(options->filter_disk);
        config.closed = filter_from(options->filter_closed);
        config.manifold = filter_from(options->filter_manifold);
        config.small = filter_from(options->filter_small);
        config.workers = options->workers;
        if (options->timeout_seconds > 0.0) config.timeout_seconds = options->timeout_seconds;
        for (size_t i = 0; i < options->n_interesting; ++i) {
            if (options->interesting_ids && options->interesting_ids[i]) {
                config.interesting.emplace_back(options->interesting_ids[i]);
            }
        }
        const uvbench::RunSummary s = uvbench::run_benchmark(config);
        if (out_summary) {
            out_summary->n_selected = s.n_selected;
            out_summary->n_success = s.n_success;
            out_summary->n_empty = s.n_empty;
            out_summary->n_filtered = s.n_filtered;
        }
        if (out_log) *out_log = dup_string(join_log(s.failures));
    });
}

uvbench_status uvbench_preprocess(const char* const* inputs, size_t n_inputs, const char* out_dir,
                                  int cut_variant, int max_components, size_t* out_written,
                                  size_t* out_skipped, char** out_log) {
    return guarded([&] {
        if (!out_dir || (n_inputs > 0 && !inputs)) {
            uvbench::raise(uvbench::ErrorCode::invalid_argument, "null argument");
        }
        std::vector<std::filesystem::path> paths;
        paths.reserve(n_inputs);
        for (size_t i = 0; i < n_inputs; ++i) {
            if (inputs[i]) paths.emplace_back(inputs[i]);
        }
        const uvbench::PreprocessSummary s =
            uvbench::run_preprocess(paths, out_dir, cut_variant != 0, max_components);
        if (out_written) *out_written = s.written.size();
        if (out_skipped) *out_skipped = s.skipped.size();
        if (out_log) *out_log = dup_string(join_log(s.skipped));
    });
}

uvbench_status uvbench_baseline_tutte(const char* manifest_path, const char* out_dir,
                                      size_t* out_embedded, size_t* out_failed, char** out_log) {
    return guarded([&] {
        if (!manifest_path || !out_dir) {
            uvbench::raise(uvbench::ErrorCode::invalid_argument, "null argument");
        }
        const uvbench::BaselineSummary s = uvbench::run_baseline_tutte(manifest_path, out_dir);
        if (out_embedded) *out_embedded = s.n_embedded;
        if (out_failed) *out_failed = s.failures.size();
        if (out_log) *out_log = dup_string(join_log(s.failures));
    });
}

uvbench_status uvbench_tags_csv(const char* const* inputs, size_t n_inputs, char** out_csv) {
    return guarded([&] {
        if (!out_csv || (n_inputs > 0 && !inputs)) {
            uvbench::raise(uvbench::ErrorCode::invalid_argument, "null argument");
        }
        std::vector<std::filesystem::path> paths;
        paths.reserve(n_inputs);
        for (size_t i = 0; i < n_inputs; ++i) {
            if (inputs[i]) paths.emplace_back(inputs[i]);
        }
        *out_csv = dup_string(uvbench::tags_csv(paths));
    });
}

uvbench_status uvbench_report(const char* csv_path, const char* out_dir) {
    return guarded([&] {
        if (!csv_path || !out_dir) {
            uvbench::raise(uvbench::ErrorCode::invalid_argument, "null argument");
        }
        uvbench::run_report(csv_path, out_dir);
    });
}

}  // extern "C"
