#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "core/csvfmt.hpp"
#include "core/error.hpp"
#include "core/manifest.hpp"
#include "core/obj_io.hpp"
#include "core/runner.hpp"
#include "core/topology.hpp"
#include "doctest.h"
#include "support/builders.hpp"
#include "support/checks.hpp"

namespace fs = std::filesystem;
using namespace uvbench;
using namespace uvbench::testing;

namespace {

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE_MESSAGE(in.good(), "cannot open " << path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : text) {
        if (c == '\n') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

bool starts_with(const std::string& s, const std::string& prefix) {
    return s.rfind(prefix, 0) == 0;
}

ManifestEntry entry(std::string id, std::string ref, std::string cand = "") {
    ManifestEntry e;
    e.id = std::move(id);
    e.reference_path = std::move(ref);
    e.candidate_path = std::move(cand);
    return e;
}

const std::string* failure_for(const RunSummary& summary, const std::string& id) {
    for (const auto& [fid, reason] : summary.failures) {
        if (fid == id) return &reason;
    }
    return nullptr;
}

const std::vector<std::string> kHistogramFiles = {
    "max_area_distortion_hist.svg",   "avg_area_discrepancy_hist.svg",
    "min_singular_value_hist.svg",    "max_singular_value_hist.svg",
    "pct_flipped_hist.svg",           "max_angle_distortion_hist.svg",
    "avg_angle_discrepancy_hist.svg", "symmetric_dirichlet_hist.svg",
    "resolution_hist.svg",            "artist_correlation_hist.svg",
    "cut_length_hist.svg",            "artist_cut_length_match_hist.svg",
};

// Manifest exercising every per-entry outcome: clean candidates, missing or
// broken inputs, and candidates the metrics stage must reject.
struct Corpus {
    fs::path dir;
    fs::path manifest;
    std::vector<ManifestEntry> entries;
    long bumpy_faces = 0;
};

Corpus build_corpus() {
    Corpus c;
    c.dir = fresh_temp_dir("runner");

    TriMesh bumpy = bumpy_disk(4);
    for (const auto& f : bumpy.faces) {
        for (int k = 0; k < 3; ++k) {
            bumpy.uv_corners.push_back({bumpy.vertices[f[k]].x, bumpy.vertices[f[k]].y});
        }
    }
    c.bumpy_faces = static_cast<long>(bumpy.faces.size());
    save_obj(bumpy, c.dir / "bumpy.obj");
    save_obj(bumpy, c.dir / "bumpy_cand.obj");

    const TriMesh grid = planar_grid(3, 3);
    save_obj(grid, c.dir / "grid.obj");
    save_obj(planar_grid(3, 3, false), c.dir / "bare.obj");
    save_obj(tetrahedron(), c.dir / "tetra.obj");

    save_text(
        "v 0 0 0\nv 1 0 0\nv 0 1 0\nvt nan 0\nvt 1 0\nvt 0 1\nf 1/1 2/2 3/3\n",
        c.dir / "nan.obj");

    TriMesh tiny = grid;
    for (Vec2& uv : tiny.uv_corners) uv = Vec2{uv.x * 1e-5, uv.y * 1e-5};
    save_obj(tiny, c.dir / "tiny.obj");

    save_text("v 1 2\n", c.dir / "broken.obj");

    TriMesh moved = grid;
    moved.vertices[0].x += 2e-5;
    save_obj(moved, c.dir / "moved.obj");

    c.entries = {
        entry("ok", "bumpy.obj", "bumpy_cand.obj"),
        entry("noparam", "grid.obj"),
        entry("nouv", "grid.obj", "bare.obj"),
        entry("nanuv", "grid.obj", "nan.obj"),
        entry("tiny", "grid.obj", "tiny.obj"),
        entry("badobj", "broken.obj"),
        entry("missing", "grid.obj", "nothere.obj"),
        entry("remesh", "grid.obj", "moved.obj"),
        entry("closedtet", "tetra.obj"),
        entry("barecand", "bare.obj", "grid.obj"),
        entry("we?ird", "grid.obj", "grid.obj"),
    };
    c.manifest = c.dir / "manifest.csv";
    save_text(manifest_csv(c.entries), c.manifest);
    return c;
}

}  // namespace

TEST_CASE("explicit worker count beats the environment") {
    CHECK(resolve_workers(1) == 1);
    CHECK(resolve_workers(7) == 7);
    setenv("UVBENCH_WORKERS", "3", 1);
    CHECK(resolve_workers(5) == 5);
    CHECK(resolve_workers(0) == 3);
    CHECK(resolve_workers(-2) == 3);
    setenv("UVBENCH_WORKERS", "0", 1);
    CHECK(resolve_workers(0) >= 1);
    setenv("UVBENCH_WORKERS", "junk", 1);
    CHECK(resolve_workers(0) >= 1);
    unsetenv("UVBENCH_WORKERS");
    CHECK(resolve_workers(0) >= 1);
}

TEST_CASE("tag filters require and forbid independently") {
    TagSet t;
    t.disk = true;
    t.closed = false;
    t.manifold = true;
    t.small = false;

    RunConfig c;
    CHECK(passes_filters(t, c));

    c.disk = TagFilter::require;
    CHECK(passes_filters(t, c));
    c.disk = TagFilter::forbid;
    CHECK(!passes_filters(t, c));
    c.disk = TagFilter::ignore;

    c.closed = TagFilter::require;
    CHECK(!passes_filters(t, c));
    c.closed = TagFilter::forbid;
    CHECK(passes_filters(t, c));
    c.closed = TagFilter::ignore;

    c.disk = TagFilter::require;
    c.small = TagFilter::require;
    CHECK(!passes_filters(t, c));
    t.small = true;
    CHECK(passes_filters(t, c));
    c.manifold = TagFilter::forbid;
    CHECK(!passes_filters(t, c));
}

TEST_CASE("atomic writes leave no temp file and overwrite in place") {
    const fs::path dir = fresh_temp_dir("atomic");
    const fs::path target = dir / "out.txt";
    write_text_atomic(target, "one\n");
    CHECK(read_file(target) == "one\n");
    write_text_atomic(target, "two\n");
    CHECK(read_file(target) == "two\n");
    CHECK(!fs::exists(dir / "out.txt.tmp"));
    CHECK(raises(ErrorCode::output_io_error,
                 [&] { write_text_atomic(dir / "no_such_dir" / "x.txt", "y"); }));
}

TEST_CASE("benchmark run reports one row per entry with faithful outcomes") {
    const Corpus corpus = build_corpus();
    RunConfig config;
    config.manifest_path = corpus.manifest;
    config.out_dir = corpus.dir / "out";
    config.workers = 1;
    config.interesting = {"ok", "we?ird", "barecand", "noparam", "remesh", "ghost"};

    const RunSummary summary = run_benchmark(config);
    CHECK(summary.n_selected == 11);
    CHECK(summary.n_success == 4);
    CHECK(summary.n_empty == 7);
    CHECK(summary.n_filtered == 0);
    CHECK(summary.report_path == config.out_dir / "report.csv");

    REQUIRE(summary.failures.size() == 7);
    REQUIRE(failure_for(summary, "noparam"));
    CHECK(*failure_for(summary, "noparam") == "not parameterized");
    REQUIRE(failure_for(summary, "nouv"));
    CHECK(*failure_for(summary, "nouv") == "candidate has no texture coordinates");
    REQUIRE(failure_for(summary, "nanuv"));
    CHECK(*failure_for(summary, "nanuv") == "candidate has non-finite UVs");
    REQUIRE(failure_for(summary, "tiny"));
    CHECK(starts_with(*failure_for(summary, "tiny"), "zero_area:"));
    REQUIRE(failure_for(summary, "badobj"));
    CHECK(starts_with(*failure_for(summary, "badobj"), "malformed_record:"));
    REQUIRE(failure_for(summary, "missing"));
    CHECK(starts_with(*failure_for(summary, "missing"), "io:"));
    REQUIRE(failure_for(summary, "closedtet"));
    CHECK(*failure_for(summary, "closedtet") == "not parameterized");

    const std::vector<MeshReport> rows = parse_report_csv(read_file(summary.report_path));
    REQUIRE(rows.size() == corpus.entries.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CHECK(rows[i].filename == corpus.entries[i].reference_path);
    }

    const MeshReport& ok = rows[0];
    REQUIRE(ok.metrics.has_value());
    CHECK(ok.metrics->pct_flipped == 0.0);
    CHECK(ok.metrics->min_singular > 0.0);
    CHECK(!ok.metrics->remeshed);
    REQUIRE(ok.metrics->cut_length.has_value());
    CHECK(*ok.metrics->cut_length == 0.0);
    REQUIRE(ok.metrics->artist_cut_match.has_value());
    CHECK(*ok.metrics->artist_cut_match == 0.0);
    REQUIRE(ok.metrics->artist_correlation.has_value());
    CHECK(*ok.metrics->artist_correlation <= 1e-12);

    const MeshReport& noparam = rows[1];
    CHECK(!noparam.metrics.has_value());
    REQUIRE(noparam.n_vertices.has_value());
    CHECK(*noparam.n_vertices == 16);
    CHECK(*noparam.n_faces == 18);
    REQUIRE(noparam.tags.has_value());
    CHECK(noparam.tags->disk);
    CHECK(!noparam.tags->closed);
    CHECK(noparam.tags->manifold);
    CHECK(noparam.tags->small);
    CHECK(*noparam.genus == 0);
    CHECK(*noparam.n_boundary_loops == 1);
    CHECK(*noparam.pct_boundary_faces == doctest::Approx(100.0 * 10.0 / 18.0));

    CHECK(!rows[2].metrics.has_value());
    CHECK(rows[2].n_vertices.has_value());
    CHECK(!rows[3].metrics.has_value());
    CHECK(!rows[4].metrics.has_value());

    const MeshReport& badobj = rows[5];
    CHECK(!badobj.metrics.has_value());
    CHECK(!badobj.n_vertices.has_value());
    CHECK(!badobj.tags.has_value());

    const MeshReport& missing = rows[6];
    CHECK(!missing.metrics.has_value());
    REQUIRE(missing.n_vertices.has_value());
    CHECK(*missing.n_vertices == 16);

    const MeshReport& remesh = rows[7];
    REQUIRE(remesh.metrics.has_value());
    CHECK(remesh.metrics->remeshed);
    CHECK(!remesh.metrics->cut_length.has_value());
    CHECK(!remesh.metrics->artist_cut_match.has_value());
    CHECK(!remesh.metrics->artist_correlation.has_value());

    const MeshReport& closedtet = rows[8];
    CHECK(!closedtet.metrics.has_value());
    REQUIRE(closedtet.tags.has_value());
    CHECK(closedtet.tags->closed);
    CHECK(!closedtet.tags->disk);

    const MeshReport& barecand = rows[9];
    REQUIRE(barecand.metrics.has_value());
    REQUIRE(barecand.metrics->cut_length.has_value());
    CHECK(*barecand.metrics->cut_length == 0.0);
    CHECK(!barecand.metrics->artist_cut_match.has_value());
    CHECK(!barecand.metrics->artist_correlation.has_value());

    const MeshReport& weird = rows[10];
    REQUIRE(weird.metrics.has_value());
    CHECK(!weird.metrics->artist_correlation.has_value());
    REQUIRE(weird.metrics->cut_length.has_value());
    CHECK(*weird.metrics->cut_length == 0.0);

    SUBCASE("triangle tables appear only for measurable interesting entries") {
        const fs::path tri_dir = config.out_dir / "triangles";
        REQUIRE(fs::exists(tri_dir / "ok.csv"));
        REQUIRE(fs::exists(tri_dir / "we_ird.csv"));
        REQUIRE(fs::exists(tri_dir / "barecand.csv"));
        CHECK(!fs::exists(tri_dir / "noparam.csv"));
        CHECK(!fs::exists(tri_dir / "remesh.csv"));
        CHECK(!fs::exists(tri_dir / "ghost.csv"));

        std::set<std::string> names;
        for (const auto& e : fs::directory_iterator(tri_dir)) {
            names.insert(e.path().filename().string());
        }
        CHECK(names == std::set<std::string>{"ok.csv", "we_ird.csv", "barecand.csv"});

        const std::vector<std::string> ok_lines = lines_of(read_file(tri_dir / "ok.csv"));
        REQUIRE(static_cast<long>(ok_lines.size()) == corpus.bumpy_faces + 1);
        CHECK(ok_lines[0] == "face_index,cand_sigma1,cand_sigma2,ref_sigma1,ref_sigma2");
        const std::vector<std::string> full = csv_split(ok_lines[1]);
        REQUIRE(full.size() == 5);
        CHECK(!full[3].empty());
        CHECK(!full[4].empty());

        const std::vector<std::string> bare_lines = lines_of(read_file(tri_dir / "barecand.csv"));
        const std::vector<std::string> bare = csv_split(bare_lines[1]);
        REQUIRE(bare.size() == 5);
        CHECK(bare[3].empty());
        CHECK(bare[4].empty());
    }

    SUBCASE("plots cover every metric column") {
        for (const std::string& name : kHistogramFiles) {
            CHECK_MESSAGE(fs::exists(config.out_dir / "plots" / name), name);
        }
        CHECK(fs::exists(config.out_dir / "plots" / "max_area_distortion_scatter.svg"));
    }

    SUBCASE("report regeneration rebuilds identical histograms") {
        const fs::path rep_dir = corpus.dir / "rep";
        run_report(summary.report_path, rep_dir);
        std::set<std::string> names;
        for (const auto& e : fs::directory_iterator(rep_dir / "plots")) {
            names.insert(e.path().filename().string());
        }
        CHECK(names == std::set<std::string>(kHistogramFiles.begin(), kHistogramFiles.end()));
        for (const std::string& name : kHistogramFiles) {
            CHECK_MESSAGE(read_file(rep_dir / "plots" / name) ==
                              read_file(config.out_dir / "plots" / name),
                          name);
        }
    }
}

TEST_CASE("report regeneration needs a readable csv") {
    const fs::path dir = fresh_temp_dir("rep_missing");
    CHECK(raises(ErrorCode::io, [&] { run_report(dir / "nope.csv", dir / "out"); }));
}

TEST_CASE("worker count does not change any output byte") {
    const Corpus corpus = build_corpus();
    RunConfig config;
    config.manifest_path = corpus.manifest;
    config.interesting = {"ok", "barecand"};

    config.out_dir = corpus.dir / "out1";
    config.workers = 1;
    const RunSummary s1 = run_benchmark(config);

    config.out_dir = corpus.dir / "out8";
    config.workers = 8;
    const RunSummary s8 = run_benchmark(config);

    CHECK(s1.n_selected == s8.n_selected);
    CHECK(s1.n_success == s8.n_success);
    CHECK(s1.n_empty == s8.n_empty);
    CHECK(read_file(s1.report_path) == read_file(s8.report_path));

    setenv("UVBENCH_WORKERS", "2", 1);
    config.out_dir = corpus.dir / "outenv";
    config.workers = 0;
    const RunSummary senv = run_benchmark(config);
    unsetenv("UVBENCH_WORKERS");
    CHECK(read_file(senv.report_path) == read_file(s1.report_path));

    for (const char* sub : {"plots", "triangles"}) {
        const fs::path d1 = corpus.dir / "out1" / sub;
        const fs::path d8 = corpus.dir / "out8" / sub;
        std::set<std::string> n1, n8;
        for (const auto& e : fs::directory_iterator(d1)) n1.insert(e.path().filename().string());
        for (const auto& e : fs::directory_iterator(d8)) n8.insert(e.path().filename().string());
        CHECK(n1 == n8);
        for (const std::string& name : n1) {
            CHECK_MESSAGE(read_file(d1 / name) == read_file(d8 / name), name);
        }
    }
}

TEST_CASE("filtered entries vanish from the report entirely") {
    const fs::path dir = fresh_temp_dir("filters");
    save_obj(planar_grid(3, 3), dir / "grid.obj");
    save_obj(tetrahedron(), dir / "tetra.obj");
    save_text("v 1 2\n", dir / "broken.obj");
    const std::vector<ManifestEntry> entries = {
        entry("gdisk", "grid.obj"),
        entry("tclosed", "tetra.obj"),
        entry("badref", "broken.obj"),
    };
    save_text(manifest_csv(entries), dir / "manifest.csv");

    RunConfig config;
    config.manifest_path = dir / "manifest.csv";
    config.workers = 1;

    SUBCASE("require disk") {
        config.disk = TagFilter::require;
        config.out_dir = dir / "req_disk";
        const RunSummary s = run_benchmark(config);
        CHECK(s.n_selected == 1);
        CHECK(s.n_filtered == 2);
        const auto rows = parse_report_csv(read_file(s.report_path));
        REQUIRE(rows.size() == 1);
        CHECK(rows[0].filename == "grid.obj");
    }

    SUBCASE("forbid disk") {
        config.disk = TagFilter::forbid;
        config.out_dir = dir / "forbid_disk";
        const RunSummary s = run_benchmark(config);
        CHECK(s.n_selected == 1);
        CHECK(s.n_filtered == 2);
        const auto rows = parse_report_csv(read_file(s.report_path));
        REQUIRE(rows.size() == 1);
        CHECK(rows[0].filename == "tetra.obj");
    }

    SUBCASE("require closed") {
        config.closed = TagFilter::require;
        config.out_dir = dir / "req_closed";
        const RunSummary s = run_benchmark(config);
        const auto rows = parse_report_csv(read_file(s.report_path));
        REQUIRE(rows.size() == 1);
        CHECK(rows[0].filename == "tetra.obj");
    }

    SUBCASE("require manifold forbid closed") {
        config.manifold = TagFilter::require;
        config.closed = TagFilter::forbid;
        config.out_dir = dir / "manifold_open";
        const RunSummary s = run_benchmark(config);
        const auto rows = parse_report_csv(read_file(s.report_path));
        REQUIRE(rows.size() == 1);
        CHECK(rows[0].filename == "grid.obj");
    }

    SUBCASE("require small keeps both real meshes") {
        config.small = TagFilter::require;
        config.out_dir = dir / "req_small";
        const RunSummary s = run_benchmark(config);
        CHECK(s.n_selected == 2);
        CHECK(s.n_filtered == 1);
    }

    SUBCASE("no filters keeps the unparseable reference as an empty row") {
        config.out_dir = dir / "no_filters";
        const RunSummary s = run_benchmark(config);
        CHECK(s.n_selected == 3);
        CHECK(s.n_filtered == 0);
        const auto rows = parse_report_csv(read_file(s.report_path));
        REQUIRE(rows.size() == 3);
        CHECK(rows[2].filename == "broken.obj");
        CHECK(!rows[2].n_vertices.has_value());
    }
}

TEST_CASE("expired time budget empties every row") {
    const fs::path dir = fresh_temp_dir("deadline");
    save_obj(planar_grid(3, 3), dir / "grid.obj");
    save_text(manifest_csv({entry("g", "grid.obj", "grid.obj")}), dir / "manifest.csv");

    RunConfig config;
    config.manifest_path = dir / "manifest.csv";
    config.out_dir = dir / "out";
    config.workers = 1;
    config.timeout_seconds = -1.0;

    const RunSummary s = run_benchmark(config);
    CHECK(s.n_selected == 1);
    CHECK(s.n_empty == 1);
    REQUIRE(s.failures.size() == 1);
    CHECK(starts_with(s.failures[0].second, "timeout:"));
    const auto rows = parse_report_csv(read_file(s.report_path));
    REQUIRE(rows.size() == 1);
    CHECK(!rows[0].metrics.has_value());
    CHECK(!rows[0].n_vertices.has_value());
}

TEST_CASE("header-only manifest produces a header-only report") {
    const fs::path dir = fresh_temp_dir("empty_manifest");
    save_text(std::string(kManifestHeader) + "\n", dir / "manifest.csv");

    RunConfig config;
    config.manifest_path = dir / "manifest.csv";
    config.out_dir = dir / "out";
    config.workers = 1;

    const RunSummary s = run_benchmark(config);
    CHECK(s.n_selected == 0);
    CHECK(s.n_success == 0);
    CHECK(s.n_empty == 0);
    CHECK(read_file(s.report_path) == std::string(kReportHeader) + "\n");
    for (const std::string& name : kHistogramFiles) {
        CHECK(fs::exists(config.out_dir / "plots" / name));
    }
}

TEST_CASE("tutte baseline writes embeddings and a chained manifest") {
    const fs::path dir = fresh_temp_dir("baseline");
    save_obj(planar_grid(3, 3, false), dir / "flat.obj");
    save_obj(bumpy_disk(3), dir / "bumpy.obj");
    save_obj(tetrahedron(), dir / "tetra.obj");
    const std::vector<ManifestEntry> entries = {
        entry("flat", "flat.obj"),
        entry("a b", "bumpy.obj"),
        entry("closed", "tetra.obj"),
    };
    save_text(manifest_csv(entries), dir / "manifest.csv");

    const fs::path out = dir / "out";
    const BaselineSummary s = run_baseline_tutte(dir / "manifest.csv", out);
    CHECK(s.n_embedded == 2);
    REQUIRE(s.failures.size() == 1);
    CHECK(s.failures[0].first == "closed");
    CHECK(starts_with(s.failures[0].second, "not_a_disk:"));
    CHECK(s.manifest_path == out / "manifest.csv");

    const std::vector<ManifestEntry> produced = load_manifest(s.manifest_path);
    REQUIRE(produced.size() == 3);
    CHECK(produced[0].id == "flat");
    CHECK(produced[0].candidate_path == "flat_tutte.obj");
    CHECK(produced[1].candidate_path == "a_b_tutte.obj");
    CHECK(produced[2].candidate_path.empty());
    for (const ManifestEntry& e : produced) {
        CHECK(fs::path(e.reference_path).is_absolute());
        CHECK(fs::exists(e.reference_path));
    }

    const TriMesh embedded = to_trimesh(parse_obj_file(out / "flat_tutte.obj"));
    REQUIRE(embedded.has_uvs());
    CHECK(embedded.vertices.size() == 16);
    CHECK(embedded.faces.size() == 18);
    for (const Vec2& uv : embedded.uv_corners) {
        CHECK(dist(uv, Vec2{0.5, 0.5}) <= 0.5 + 1e-9);
    }
    for (int f = 0; f < static_cast<int>(embedded.faces.size()); ++f) {
        CHECK(triangle_area_uv_signed(embedded, f) > 0.0);
    }

    RunConfig config;
    config.manifest_path = s.manifest_path;
    config.out_dir = dir / "bench";
    config.workers = 1;
    const RunSummary bench = run_benchmark(config);
    CHECK(bench.n_success == 2);
    CHECK(bench.n_empty == 1);
    const auto rows = parse_report_csv(read_file(bench.report_path));
    REQUIRE(rows.size() == 3);
    for (int i : {0, 1}) {
        REQUIRE(rows[static_cast<std::size_t>(i)].metrics.has_value());
        CHECK(rows[static_cast<std::size_t>(i)].metrics->pct_flipped == 0.0);
        CHECK(rows[static_cast<std::size_t>(i)].metrics->min_singular > 0.0);
    }
}

TEST_CASE("tags listing prints one row per input") {
    const fs::path dir = fresh_temp_dir("tags");
    const fs::path tri = dir / "tri.obj";
    const fs::path tetra = dir / "tetra.obj";
    const fs::path fan = dir / "fan.obj";
    const fs::path missing = dir / "missing.obj";
    save_obj(single_triangle(), tri);
    save_obj(tetrahedron(), tetra);
    save_obj(triple_fan_edge(), fan);

    const std::string out = tags_csv({tri, tetra, fan, missing});
    const std::vector<std::string> lines = lines_of(out);
    REQUIRE(lines.size() == 5);
    CHECK(lines[0] ==
          "filename,n_vertices,n_edges,n_faces,euler_characteristic,n_components,"
          "n_boundary_loops,n_boundary_faces,pct_boundary_faces,vertex_manifold,edge_manifold,"
          "orientable,genus,n_charts,tag_disk,tag_closed,tag_manifold,tag_small");
    CHECK(lines[1] == tri.string() + ",3,3,1,1,1,1,1,100,true,true,true,0,1,true,false,true,true");
    CHECK(lines[2] ==
          tetra.string() + ",4,6,4,2,1,0,0,0,true,true,true,0,,false,true,true,true");

    const std::vector<std::string> fan_fields = csv_split(lines[3]);
    REQUIRE(fan_fields.size() == 18);
    CHECK(fan_fields[10] == "false");
    CHECK(fan_fields[12].empty());
    CHECK(fan_fields[16] == "false");

    CHECK(lines[4] == missing.string() + ",,,,,,,,,,,,,,,,,");
}

TEST_CASE("preprocess splits components and names parts after the source") {
    const fs::path dir = fresh_temp_dir("preproc_in");
    const TriMesh two = make_mesh(
        {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {5, 0, 0}, {6, 0, 0}, {5, 1, 0}},
        {{0, 1, 2}, {3, 4, 5}});
    save_obj(two, dir / "two.obj");

    SUBCASE("uncut variant keeps every component") {
        const fs::path out = dir / "out_all";
        const PreprocessSummary s = run_preprocess({dir / "two.obj"}, out, false, 50);
        CHECK(s.skipped.empty());
        REQUIRE(s.written == std::vector<std::string>{"two_0.obj", "two_1.obj"});
        const std::vector<ManifestEntry> produced = load_manifest(s.manifest_path);
        REQUIRE(produced.size() == 2);
        CHECK(produced[0].id == "two_0");
        CHECK(produced[0].reference_path == "two_0.obj");
        CHECK(produced[0].candidate_path.empty());
        CHECK(produced[0].variant == "uncut");
        CHECK(produced[0].source_asset == "two.obj");
        const TriMesh part = to_trimesh(parse_obj_file(out / "two_0.obj"));
        CHECK(part.faces.size() == 1);
        CHECK(part.vertices.size() == 3);
    }

    SUBCASE("component cap keeps the largest parts") {
        const fs::path out = dir / "out_cap";
        const PreprocessSummary s = run_preprocess({dir / "two.obj"}, out, false, 1);
        CHECK(s.written == std::vector<std::string>{"two_0.obj"});
        CHECK(load_manifest(s.manifest_path).size() == 1);
    }

    SUBCASE("same stem from different directories stays unique") {
        const fs::path other = fresh_temp_dir("preproc_dup");
        save_obj(single_triangle(), dir / "dup.obj");
        save_obj(single_triangle(), other / "dup.obj");
        const fs::path out = dir / "out_dup";
        const PreprocessSummary s =
            run_preprocess({dir / "dup.obj", other / "dup.obj"}, out, false, 50);
        REQUIRE(s.written == std::vector<std::string>{"dup_0.obj", "dup_0x.obj"});
        const std::vector<ManifestEntry> produced = load_manifest(s.manifest_path);
        REQUIRE(produced.size() == 2);
        CHECK(produced[0].id == "dup_0");
        CHECK(produced[1].id == "dup_0x");
    }

    SUBCASE("vertex merge runs before the component split") {
        const TriMesh bridge = make_mesh(
            {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1e-9}, {1, 0, 1e-9}, {1, -1, 0}},
            {{0, 1, 2}, {4, 3, 5}});
        save_obj(bridge, dir / "bridge.obj");
        const fs::path out = dir / "out_bridge";
        const PreprocessSummary s = run_preprocess({dir / "bridge.obj"}, out, false, 50);
        CHECK(s.written == std::vector<std::string>{"bridge_0.obj"});
        const TriMesh part = to_trimesh(parse_obj_file(out / "bridge_0.obj"));
        CHECK(part.vertices.size() == 4);
        CHECK(part.faces.size() == 2);
    }

    SUBCASE("cut variant opens the seams") {
        save_obj(open_cylinder(8, 2, true), dir / "cyl.obj");
        const fs::path out = dir / "out_cut";
        const PreprocessSummary s = run_preprocess({dir / "cyl.obj"}, out, true, 50);
        CHECK(s.skipped.empty());
        REQUIRE(s.written == std::vector<std::string>{"cyl_0.obj"});
        const std::vector<ManifestEntry> produced = load_manifest(s.manifest_path);
        REQUIRE(produced.size() == 1);
        CHECK(produced[0].variant == "cut");
        const TriMesh part = to_trimesh(parse_obj_file(out / "cyl_0.obj"));
        const TopologyInfo topo = compute_topology(part, build_adjacency(part));
        CHECK(topo.euler_characteristic == 1);
        CHECK(topo.n_components == 1);
        CHECK(topo.n_boundary_loops == 1);
    }

    SUBCASE("cut variant skips nonmanifold inputs") {
        save_obj(bowtie(), dir / "bowtie.obj");
        const fs::path out = dir / "out_nm";
        const PreprocessSummary s = run_preprocess({dir / "bowtie.obj"}, out, true, 50);
        CHECK(s.written.empty());
        REQUIRE(s.skipped.size() == 1);
        CHECK(s.skipped[0].second == "nonmanifold");
        CHECK(load_manifest(s.manifest_path).empty());
    }

    SUBCASE("unreadable inputs are skipped with the reason") {
        const fs::path out = dir / "out_missing";
        const PreprocessSummary s = run_preprocess({dir / "ghost.obj"}, out, false, 50);
        CHECK(s.written.empty());
        REQUIRE(s.skipped.size() == 1);
        CHECK(starts_with(s.skipped[0].second, "io:"));
    }
}
