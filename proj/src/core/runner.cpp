#include "core/runner.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <thread>
#include <unordered_map>
#include <unordered_set>

#include "core/csvfmt.hpp"
#include "core/deadline.hpp"
#include "core/error.hpp"
#include "core/jacobian.hpp"
#include "core/metrics.hpp"
#include "core/obj_io.hpp"
#include "core/preprocess.hpp"
#include "core/svg.hpp"
#include "core/topology.hpp"
#include "core/tutte.hpp"

namespace uvbench {
namespace {

namespace fs = std::filesystem;

std::string safe_name(const std::string& id) {
    std::string out;
    out.reserve(id.size());
    for (char c : id) {
        const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                        (c >= '0' && c <= '9') || c == '.' || c == '_' || c == '-';
        out.push_back(ok ? c : '_');
    }
    return out.empty() ? std::string("unnamed") : out;
}

struct EntryOutcome {
    bool selected = true;
    MeshReport report;
    std::optional<MeshMetrics> reference_metrics;
};

bool filters_active(const RunConfig& c) {
    return c.disk != TagFilter::ignore || c.closed != TagFilter::ignore ||
           c.manifold != TagFilter::ignore || c.small != TagFilter::ignore;
}

MeshMetrics metrics_from_measures(std::span<const TriangleMeasures> measures,
                                  const TriMesh& original) {
    MeshMetrics m;
    m.max_area_distortion = max_area_distortion(measures);
    m.avg_area_discrepancy = avg_area_discrepancy(measures);
    std::tie(m.min_singular, m.max_singular) = singular_extrema(measures);
    m.pct_flipped = pct_flipped(measures);
    m.max_angle_distortion = max_angle_distortion(measures);
    m.avg_angle_discrepancy = avg_angle_discrepancy(measures);
    m.symmetric_dirichlet = symmetric_dirichlet(measures);
    m.resolution = resolution(original);
    return m;
}

void eval_impl(const ManifestEntry& entry, const fs::path& base_dir, const RunConfig& config,
               Deadline& deadline, EntryOutcome& out) {
    MeshReport& rep = out.report;

    const TriMesh ref = to_trimesh(parse_obj_file(resolve(base_dir, entry.reference_path), deadline));
    deadline.check();
    const EdgeAdjacency adj = build_adjacency(ref);
    deadline.check();
    const TopologyInfo topo = compute_topology(ref, adj);
    const TagSet tags = evaluate_tags(topo, static_cast<long>(ref.faces.size()));
    if (filters_active(config) && !passes_filters(tags, config)) {
        out.selected = false;
        return;
    }
    rep.n_vertices = static_cast<long>(ref.vertices.size());
    rep.n_faces = static_cast<long>(ref.faces.size());
    rep.tags = tags;
    rep.genus = topo.genus;
    rep.n_boundary_loops = topo.n_boundary_loops;
    rep.pct_boundary_faces = ref.faces.empty() ? 0.0
                                               : 100.0 * static_cast<double>(topo.n_boundary_faces) /
                                                     static_cast<double>(ref.faces.size());

    if (entry.candidate_path.empty()) {
        rep.failure = "not parameterized";
        return;
    }
    const TriMesh cand =
        to_trimesh(parse_obj_file(resolve(base_dir, entry.candidate_path), deadline));
    deadline.check();
    if (!cand.has_uvs()) {
        rep.failure = "candidate has no texture coordinates";
        return;
    }
    for (const Vec2& uv : cand.uv_corners) {
        if (!is_finite(uv)) {
            rep.failure = "candidate has non-finite UVs";
            return;
        }
    }

    const auto [ncand, unused_scale] = normalize_areas(cand, config.tiny_area);
    deadline.check();
    const std::vector<TriangleMeasures> cmeasures = compute_measures(ncand);
    deadline.check();

    MeshMetrics m = metrics_from_measures(cmeasures, cand);
    m.remeshed = detect_remeshed(cand, ref);
    deadline.check();

    // The reference map's own quality, for correlation, scatter plots and the
    // artist cut length. A broken reference map only disables those extras.
    std::optional<std::vector<TriangleMeasures>> rmeasures;
    std::optional<double> artist_cut;
    if (ref.has_uvs()) {
        try {
            const auto [nref, unused2] = normalize_areas(ref, config.tiny_area);
            rmeasures = compute_measures(nref);
            MeshMetrics rm = metrics_from_measures(*rmeasures, ref);
            artist_cut = cut_length(ref, ref, adj);
            rm.cut_length = artist_cut;
            out.reference_metrics = std::move(rm);
        } catch (const Error& e) {
            if (e.code() == ErrorCode::timeout) throw;
            rmeasures.reset();
            out.reference_metrics.reset();
        }
    }
    deadline.check();

    if (!m.remeshed) {
        m.cut_length = cut_length(cand, ref, adj);
        if (artist_cut) m.artist_cut_match = artist_cut_match(*m.cut_length, *artist_cut);
        if (rmeasures) m.artist_correlation = artist_correlation(cmeasures, *rmeasures);
    }
    rep.metrics = std::move(m);
}

EntryOutcome evaluate_entry(const ManifestEntry& entry, const fs::path& base_dir,
                            const RunConfig& config) {
    EntryOutcome out;
    out.report.id = entry.id;
    out.report.filename = entry.reference_path;
    Deadline deadline = Deadline::after_seconds(config.timeout_seconds);
    try {
        eval_impl(entry, base_dir, config, deadline, out);
    } catch (const Error& e) {
        out.report.metrics.reset();
        out.report.failure = std::string(error_code_name(e.code())) + ": " + e.what();
    } catch (const std::exception& e) {
        out.report.metrics.reset();
        out.report.failure = e.what();
    } catch (...) {
        out.report.metrics.reset();
        out.report.failure = "unknown error";
    }
    // Tag filters could not be evaluated for a reference that failed to
    // parse; with filters active such entries are omitted rather than
    // reported with unknown tags.
    if (filters_active(config) && !out.report.tags) out.selected = false;
    return out;
}

std::optional<TriangleTable> triangle_table_for(const ManifestEntry& entry,
                                                const fs::path& base_dir,
                                                const RunConfig& config) {
    try {
        Deadline deadline = Deadline::after_seconds(config.timeout_seconds);
        const TriMesh ref =
            to_trimesh(parse_obj_file(resolve(base_dir, entry.reference_path), deadline));
        if (entry.candidate_path.empty()) return std::nullopt;
        const TriMesh cand =
            to_trimesh(parse_obj_file(resolve(base_dir, entry.candidate_path), deadline));
        if (!cand.has_uvs()) return std::nullopt;
        if (detect_remeshed(cand, ref)) return std::nullopt;

        const auto [ncand, s1] = normalize_areas(cand, config.tiny_area);
        const std::vector<TriangleMeasures> cm = compute_measures(ncand);
        std::optional<std::vector<TriangleMeasures>> rm;
        if (ref.has_uvs()) {
            try {
                const auto [nref, s2] = normalize_areas(ref, config.tiny_area);
                rm = compute_measures(nref);
            } catch (const Error&) {
            }
        }

        TriangleTable table;
        table.id = entry.id;
        table.rows.reserve(cm.size());
        for (std::size_t f = 0; f < cm.size(); ++f) {
            TriangleRow row;
            row.face_index = static_cast<long>(f);
            row.cand_sigma1 = cm[f].sigma1;
            row.cand_sigma2 = cm[f].sigma2;
            if (rm) {
                row.ref_sigma1 = (*rm)[f].sigma1;
                row.ref_sigma2 = (*rm)[f].sigma2;
            }
            table.rows.push_back(row);
        }
        return table;
    } catch (...) {
        return std::nullopt;
    }
}

}  // namespace

int resolve_workers(int requested) {
    if (requested >= 1) return requested;
    if (const char* env = std::getenv("UVBENCH_WORKERS")) {
        const int parsed = std::atoi(env);
        if (parsed >= 1) return parsed;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw >= 1 ? static_cast<int>(hw) : 1;
}

bool passes_filters(const TagSet& tags, const RunConfig& config) {
    const auto ok = [](TagFilter f, bool value) {
        if (f == TagFilter::require) return value;
        if (f == TagFilter::forbid) return !value;
        return true;
    };
    return ok(config.disk, tags.disk) && ok(config.closed, tags.closed) &&
           ok(config.manifold, tags.manifold) && ok(config.small, tags.small);
}

void write_text_atomic(const fs::path& path, const std::string& content) {
    const fs::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) raise(ErrorCode::output_io_error, "cannot open '" + tmp.string() + "'");
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        out.flush();
        if (!out.good()) raise(ErrorCode::output_io_error, "write failed for '" + tmp.string() + "'");
    }
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec) {
        raise(ErrorCode::output_io_error,
              "rename to '" + path.string() + "' failed: " + ec.message());
    }
}

RunSummary run_benchmark(const RunConfig& config) {
    const std::vector<ManifestEntry> entries = load_manifest(config.manifest_path);
    const fs::path base_dir = config.manifest_path.parent_path();

    std::vector<EntryOutcome> outcomes(entries.size());
    const int workers =
        std::max(1, std::min<int>(resolve_workers(config.workers),
                                  static_cast<int>(std::max<std::size_t>(entries.size(), 1))));
    std::atomic<std::size_t> cursor{0};
    const auto work = [&] {
        for (;;) {
            const std::size_t i = cursor.fetch_add(1);
            if (i >= entries.size()) break;
            outcomes[i] = evaluate_entry(entries[i], base_dir, config);
        }
    };
    if (workers == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int w = 0; w < workers; ++w) pool.emplace_back(work);
        for (std::thread& t : pool) t.join();
    }

    RunSummary summary;
    std::vector<MeshReport> rows;
    std::vector<std::optional<MeshMetrics>> refs;
    std::unordered_map<std::string, std::size_t> entry_by_id;
    for (std::size_t i = 0; i < entries.size(); ++i) entry_by_id[entries[i].id] = i;
    for (EntryOutcome& o : outcomes) {
        if (!o.selected) {
            ++summary.n_filtered;
            continue;
        }
        if (o.report.metrics) {
            ++summary.n_success;
        } else {
            ++summary.n_empty;
            summary.failures.emplace_back(o.report.id, o.report.failure);
        }
        rows.push_back(std::move(o.report));
        refs.push_back(std::move(o.reference_metrics));
    }
    summary.n_selected = rows.size();

    std::error_code ec;
    fs::create_directories(config.out_dir, ec);
    fs::create_directories(config.out_dir / "plots", ec);
    if (!fs::exists(config.out_dir)) {
        raise(ErrorCode::output_io_error, "cannot create '" + config.out_dir.string() + "'");
    }

    summary.report_path = config.out_dir / "report.csv";
    write_text_atomic(summary.report_path, report_csv(rows));

    std::vector<ReportedValues> values;
    values.reserve(rows.size());
    for (const MeshReport& r : rows) {
        ReportedValues v;
        v.id = r.id;
        if (r.metrics) {
            v.artist_correlation = r.metrics->artist_correlation;
            v.avg_area_discrepancy = r.metrics->avg_area_discrepancy;
            v.avg_angle_discrepancy = r.metrics->avg_angle_discrepancy;
            v.pct_flipped = r.metrics->pct_flipped;
        }
        values.push_back(std::move(v));
    }
    const std::vector<std::string> interesting = select_interesting(values, config.interesting);
    if (!interesting.empty()) {
        fs::create_directories(config.out_dir / "triangles", ec);
        for (const std::string& id : interesting) {
            const auto it = entry_by_id.find(id);
            if (it == entry_by_id.end()) continue;
            if (const auto table = triangle_table_for(entries[it->second], base_dir, config)) {
                write_text_atomic(config.out_dir / "triangles" / (safe_name(id) + ".csv"),
                                  triangle_csv(table->rows));
            }
        }
    }

    for (const PlotFile& plot : aggregate_plots(rows, refs)) {
        write_text_atomic(config.out_dir / "plots" / plot.name, plot.content);
    }
    return summary;
}

BaselineSummary run_baseline_tutte(const fs::path& manifest_path, const fs::path& out_dir) {
    const std::vector<ManifestEntry> entries = load_manifest(manifest_path);
    const fs::path base_dir = manifest_path.parent_path();

    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (!fs::exists(out_dir)) {
        raise(ErrorCode::output_io_error, "cannot create '" + out_dir.string() + "'");
    }

    BaselineSummary summary;
    std::vector<ManifestEntry> produced;
    for (const ManifestEntry& entry : entries) {
        ManifestEntry out = entry;
        out.reference_path = fs::absolute(resolve(base_dir, entry.reference_path)).string();
        out.candidate_path.clear();
        try {
            TriMesh mesh = to_trimesh(parse_obj_file(resolve(base_dir, entry.reference_path)));
            mesh.uv_corners = tutte_embed(mesh);
            const std::string name = safe_name(entry.id) + "_tutte.obj";
            write_text_atomic(out_dir / name, write_obj(mesh));
            out.candidate_path = name;
            ++summary.n_embedded;
        } catch (const Error& e) {
            summary.failures.emplace_back(entry.id,
                                          std::string(error_code_name(e.code())) + ": " + e.what());
        } catch (const std::exception& e) {
            summary.failures.emplace_back(entry.id, e.what());
        }
        produced.push_back(std::move(out));
    }

    summary.manifest_path = out_dir / "manifest.csv";
    write_text_atomic(summary.manifest_path, manifest_csv(produced));
    return summary;
}

std::string tags_csv(const std::vector<fs::path>& inputs) {
    std::string out =
        "filename,n_vertices,n_edges,n_faces,euler_characteristic,n_components,"
        "n_boundary_loops,n_boundary_faces,pct_boundary_faces,vertex_manifold,edge_manifold,"
        "orientable,genus,n_charts,tag_disk,tag_closed,tag_manifold,tag_small\n";
    for (const fs::path& path : inputs) {
        out += csv_escape(path.string());
        try {
            const TriMesh mesh = to_trimesh(parse_obj_file(path));
            const EdgeAdjacency adj = build_adjacency(mesh);
            const TopologyInfo topo = compute_topology(mesh, adj);
            const TagSet tags = evaluate_tags(topo, static_cast<long>(mesh.faces.size()));
            const double pct = mesh.faces.empty()
                                   ? 0.0
                                   : 100.0 * static_cast<double>(topo.n_boundary_faces) /
                                         static_cast<double>(mesh.faces.size());
            out += "," + std::to_string(topo.n_vertices);
            out += "," + std::to_string(topo.n_edges);
            out += "," + std::to_string(topo.n_faces);
            out += "," + std::to_string(topo.euler_characteristic);
            out += "," + std::to_string(topo.n_components);
            out += "," + std::to_string(topo.n_boundary_loops);
            out += "," + std::to_string(topo.n_boundary_faces);
            out += "," + format_double(pct);
            out += std::string(",") + (topo.vertex_manifold ? "true" : "false");
            out += std::string(",") + (topo.edge_manifold ? "true" : "false");
            out += std::string(",") + (topo.orientable ? "true" : "false");
            out += "," + (topo.genus ? std::to_string(*topo.genus) : std::string());
            std::string charts;
            if (mesh.has_uvs()) {
                try {
                    charts = std::to_string(chart_count(mesh));
                } catch (const Error&) {
                }
            }
            out += "," + charts;
            out += std::string(",") + (tags.disk ? "true" : "false");
            out += std::string(",") + (tags.closed ? "true" : "false");
            out += std::string(",") + (tags.manifold ? "true" : "false");
            out += std::string(",") + (tags.small ? "true" : "false");
        } catch (const std::exception&) {
            out += ",,,,,,,,,,,,,,,,,";
        }
        out.push_back('\n');
    }
    return out;
}

PreprocessSummary run_preprocess(const std::vector<fs::path>& inputs, const fs::path& out_dir,
                                 bool cut_variant, int max_components) {
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (!fs::exists(out_dir)) {
        raise(ErrorCode::output_io_error, "cannot create '" + out_dir.string() + "'");
    }

    PreprocessSummary summary;
    std::vector<ManifestEntry> produced;
    std::unordered_set<std::string> used_ids;
    PreprocessConfig config;
    config.max_components = max_components;

    for (const fs::path& input : inputs) {
        try {
            TriMesh mesh = to_trimesh(parse_obj_file(input));
            mesh = merge_close_vertices(mesh, config);
            if (cut_variant) {
                const EdgeAdjacency adj = build_adjacency(mesh);
                const TopologyInfo topo = compute_topology(mesh, adj);
                if (!topo.vertex_manifold || !topo.edge_manifold) {
                    summary.skipped.emplace_back(input.string(), "nonmanifold");
                    continue;
                }
                mesh = cut_along_seams(mesh, config.merge_epsilon_uv);
            }
            const std::vector<TriMesh> parts = split_and_cap(mesh, config);
            std::string stem = safe_name(input.stem().string());
            for (std::size_t k = 0; k < parts.size(); ++k) {
                std::string id = stem + "_" + std::to_string(k);
                while (!used_ids.insert(id).second) id += "x";
                const std::string name = id + ".obj";
                write_text_atomic(out_dir / name, write_obj(parts[k]));
                summary.written.push_back(name);
                ManifestEntry e;
                e.id = std::move(id);
                e.reference_path = name;
                e.variant = cut_variant ? "cut" : "uncut";
                e.source_asset = input.filename().string();
                produced.push_back(std::move(e));
            }
        } catch (const Error& e) {
            summary.skipped.emplace_back(input.string(),
                                         std::string(error_code_name(e.code())) + ": " + e.what());
        } catch (const std::exception& e) {
            summary.skipped.emplace_back(input.string(), e.what());
        }
    }

    summary.manifest_path = out_dir / "manifest.csv";
    write_text_atomic(summary.manifest_path, manifest_csv(produced));
    return summary;
}

void run_report(const fs::path& csv_path, const fs::path& out_dir) {
    std::ifstream in(csv_path, std::ios::binary);
    if (!in) raise(ErrorCode::io, "cannot open '" + csv_path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    const std::vector<MeshReport> rows = parse_report_csv(buf.str());

    std::error_code ec;
    fs::create_directories(out_dir / "plots", ec);
    if (!fs::exists(out_dir / "plots")) {
        raise(ErrorCode::output_io_error, "cannot create '" + (out_dir / "plots").string() + "'");
    }
    const std::vector<std::optional<MeshMetrics>> refs(rows.size());
    for (const PlotFile& plot : aggregate_plots(rows, refs)) {
        write_text_atomic(out_dir / "plots" / plot.name, plot.content);
    }
}

}  // namespace uvbench
