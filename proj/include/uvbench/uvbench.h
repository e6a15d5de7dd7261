/* uvbench: UV parameterization benchmark harness, C interface.
 *
 * Every function that can fail returns a uvbench_status; on failure a
 * human-readable message is available from uvbench_last_error() until the
 * next call on the same thread. Strings returned through out-parameters are
 * heap-allocated and must be released with uvbench_string_free().
 */
#ifndef UVBENCH_H
#define UVBENCH_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

#define UVBENCH_VERSION_STRING "0.1.0"

typedef enum uvbench_status {
    UVBENCH_OK = 0,
    UVBENCH_ERR_INVALID_ARGUMENT = 1,
    UVBENCH_ERR_IO = 2,
    UVBENCH_ERR_MALFORMED_RECORD = 3,
    UVBENCH_ERR_MIXED_UV_PRESENCE = 4,
    UVBENCH_ERR_ZERO_AREA = 5,
    UVBENCH_ERR_DEGENERATE_TRIANGLE = 6,
    UVBENCH_ERR_ALL_DEGENERATE = 7,
    UVBENCH_ERR_UV_MISMATCH = 8,
    UVBENCH_ERR_NOT_A_DISK = 9,
    UVBENCH_ERR_SOLVER_DIVERGED = 10,
    UVBENCH_ERR_REMESHED_MESH = 11,
    UVBENCH_ERR_ZERO_VARIANCE = 12,
    UVBENCH_ERR_CORRESPONDENCE = 13,
    UVBENCH_ERR_MANIFEST = 14,
    UVBENCH_ERR_OUTPUT_IO = 15,
    UVBENCH_ERR_TIMEOUT = 16,
    UVBENCH_ERR_INTERNAL = 17,
    UVBENCH_ERR_UNKNOWN = 18
} uvbench_status;

const char* uvbench_version(void);

/* Message for the most recent failure on this thread; never NULL. */
const char* uvbench_last_error(void);

void uvbench_string_free(char* text);

/* ---- meshes ---------------------------------------------------------- */

typedef struct uvbench_mesh uvbench_mesh;

/* Loads an OBJ file (v/vt/f records; polygons are fan-triangulated). */
uvbench_status uvbench_mesh_load(const char* path, uvbench_mesh** out_mesh);
void uvbench_mesh_free(uvbench_mesh* mesh);

long uvbench_mesh_vertex_count(const uvbench_mesh* mesh);
long uvbench_mesh_face_count(const uvbench_mesh* mesh);
int uvbench_mesh_has_uvs(const uvbench_mesh* mesh);

typedef struct uvbench_topology_info {
    long n_vertices;
    long n_edges;
    long n_faces;
    long euler_characteristic;
    long n_boundary_loops;
    long n_boundary_faces;
    long n_components;
    int vertex_manifold;
    int edge_manifold;
    int orientable;
    int has_genus; /* genus is valid only when nonzero */
    long genus;
    int tag_disk;
    int tag_closed;
    int tag_manifold;
    int tag_small;
} uvbench_topology_info;

uvbench_status uvbench_mesh_topology(const uvbench_mesh* mesh, uvbench_topology_info* out_info);

/* ---- direct measurement ---------------------------------------------- */

typedef struct uvbench_metrics {
    double max_area_distortion;
    double avg_area_discrepancy;
    double min_singular_value;
    double max_singular_value;
    double pct_flipped;
    double max_angle_distortion;
    double avg_angle_discrepancy;
    double symmetric_dirichlet;
    double resolution;
    int has_artist_correlation;
    double artist_correlation;
    int remeshed;
    int has_cut_length;
    double cut_length;
    int has_artist_cut_length_match;
    double artist_cut_length_match;
} uvbench_metrics;

/* Benchmarks the candidate's UV map against the reference (artist) mesh. */
uvbench_status uvbench_measure_pair(const uvbench_mesh* candidate, const uvbench_mesh* reference,
                                    uvbench_metrics* out_metrics);

/* ---- batch commands --------------------------------------------------- */

typedef struct uvbench_run_options {
    const char* manifest_path;
    const char* out_dir;
    /* 0 = ignore, 1 = require, -1 = forbid */
    int filter_disk;
    int filter_closed;
    int filter_manifold;
    int filter_small;
    int workers;            /* <= 0: UVBENCH_WORKERS env var, then hardware */
    double timeout_seconds; /* <= 0: default 300 */
    const char* const* interesting_ids;
    size_t n_interesting;
} uvbench_run_options;

typedef struct uvbench_run_summary {
    size_t n_selected;
    size_t n_success;
    size_t n_empty;
    size_t n_filtered;
} uvbench_run_summary;

/* Runs the benchmark over a manifest; writes report.csv, triangle CSVs and
 * SVG plots under out_dir. out_log (optional) receives one "id: reason" line
 * per row that came back empty. */
uvbench_status uvbench_measure(const uvbench_run_options* options,
                               uvbench_run_summary* out_summary, char** out_log);

/* Dataset construction: triangulate, merge close vertices, optionally cut
 * along UV seams, split into components capped at max_components, and write
 * the pieces plus a manifest into out_dir. */
uvbench_status uvbench_preprocess(const char* const* inputs, size_t n_inputs, const char* out_dir,
                                  int cut_variant, int max_components, size_t* out_written,
                                  size_t* out_skipped, char** out_log);

/* Tutte-embedding baseline over a manifest's reference meshes. */
uvbench_status uvbench_baseline_tutte(const char* manifest_path, const char* out_dir,
                                      size_t* out_embedded, size_t* out_failed, char** out_log);

/* Topology/tag table for a set of OBJ files, as CSV text. */
uvbench_status uvbench_tags_csv(const char* const* inputs, size_t n_inputs, char** out_csv);

/* Regenerates histogram plots from an existing report CSV. */
uvbench_status uvbench_report(const char* csv_path, const char* out_dir);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* UVBENCH_H */
