// Command line front end. Talks to the library strictly through the C API.

#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "uvbench/uvbench.h"

namespace {

void print_log(const char* log) {
    if (log && *log) std::fputs(log, stderr);
}

std::vector<const char*> c_strings(const std::vector<std::string>& items) {
    std::vector<const char*> out;
    out.reserve(items.size());
    for (const std::string& s : items) out.push_back(s.c_str());
    return out;
}

int fail(const char* what) {
    std::fprintf(stderr, "uvbench: %s: %s\n", what, uvbench_last_error());
    return 2;
}

// 0 = ignore, 1 = require, -1 = forbid.
void add_filter_flags(CLI::App* cmd, const char* tag, int* value) {
    auto* req = cmd->add_flag_callback(
        std::string("--require-") + tag, [value] { *value = 1; },
        std::string("only meshes tagged '") + tag + "'");
    auto* forb = cmd->add_flag_callback(
        std::string("--forbid-") + tag, [value] { *value = -1; },
        std::string("skip meshes tagged '") + tag + "'");
    req->excludes(forb);
    forb->excludes(req);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"UV parameterization benchmark harness"};
    app.set_version_flag("--version", uvbench_version());
    app.require_subcommand(1);

    // measure
    auto* measure = app.add_subcommand("measure", "run the benchmark over a manifest");
    std::string manifest, out_dir;
    int filter_disk = 0, filter_closed = 0, filter_manifold = 0, filter_small = 0;
    int workers = 0;
    double timeout = 300.0;
    std::vector<std::string> interesting;
    measure->add_option("--manifest", manifest, "manifest CSV")->required();
    measure->add_option("--out", out_dir, "output directory")->required();
    add_filter_flags(measure, "disk", &filter_disk);
    add_filter_flags(measure, "closed", &filter_closed);
    add_filter_flags(measure, "manifold", &filter_manifold);
    add_filter_flags(measure, "small", &filter_small);
    measure->add_option("--workers", workers, "worker thread count (default: UVBENCH_WORKERS, then hardware)");
    measure->add_option("--timeout", timeout, "per-mesh timeout in seconds")->check(CLI::PositiveNumber);
    measure->add_option("--interesting", interesting, "mesh ids to dump per-triangle data for")
        ->delimiter(',');

    // preprocess
    auto* preprocess = app.add_subcommand("preprocess", "build dataset meshes from source OBJs");
    std::vector<std::string> pre_inputs;
    std::string pre_out, variant = "uncut";
    int max_components = 50;
    preprocess->add_option("--in", pre_inputs, "input OBJ files")->required();
    preprocess->add_option("--out", pre_out, "output directory")->required();
    preprocess->add_option("--variant", variant, "dataset variant")
        ->check(CLI::IsMember({"cut", "uncut"}));
    preprocess->add_option("--max-components", max_components, "component cap per input")
        ->check(CLI::PositiveNumber);

    // tags
    auto* tags = app.add_subcommand("tags", "print topology and tag columns for OBJ files");
    std::vector<std::string> tag_inputs;
    tags->add_option("--in", tag_inputs, "input OBJ files")->required();

    // baseline tutte
    auto* baseline = app.add_subcommand("baseline", "built-in parameterization methods");
    baseline->require_subcommand(1);
    auto* tutte = baseline->add_subcommand("tutte", "Tutte embedding for disk meshes");
    std::string tutte_manifest, tutte_out;
    tutte->add_option("--manifest", tutte_manifest, "manifest CSV")->required();
    tutte->add_option("--out", tutte_out, "output directory")->required();

    // report
    auto* report = app.add_subcommand("report", "regenerate plots from a report CSV");
    std::string report_csv, report_out;
    report->add_option("--csv", report_csv, "existing report.csv")->required();
    report->add_option("--out", report_out, "output directory")->required();

    CLI11_PARSE(app, argc, argv);

    if (*measure) {
        const std::vector<const char*> ids = c_strings(interesting);
        uvbench_run_options options{};
        options.manifest_path = manifest.c_str();
        options.out_dir = out_dir.c_str();
        options.filter_disk = filter_disk;
        options.filter_closed = filter_closed;
        options.filter_manifold = filter_manifold;
        options.filter_small = filter_small;
        options.workers = workers;
        options.timeout_seconds = timeout;
        options.interesting_ids = ids.data();
        options.n_interesting = ids.size();
        uvbench_run_summary summary{};
        char* log = nullptr;
        if (uvbench_measure(&options, &summary, &log) != UVBENCH_OK) return fail("measure");
        print_log(log);
        uvbench_string_free(log);
        std::printf("measured %zu meshes: %zu ok, %zu empty, %zu filtered out\n",
                    summary.n_selected, summary.n_success, summary.n_empty, summary.n_filtered);
        return summary.n_success > 0 ? 0 : 1;
    }

    if (*preprocess) {
        const std::vector<const char*> inputs = c_strings(pre_inputs);
        size_t written = 0, skipped = 0;
        char* log = nullptr;
        if (uvbench_preprocess(inputs.data(), inputs.size(), pre_out.c_str(), variant == "cut",
                               max_components, &written, &skipped, &log) != UVBENCH_OK) {
            return fail("preprocess");
        }
        print_log(log);
        uvbench_string_free(log);
        std::printf("wrote %zu component meshes (%zu inputs skipped)\n", written, skipped);
        return 0;
    }

    if (*tags) {
        const std::vector<const char*> inputs = c_strings(tag_inputs);
        char* csv = nullptr;
        if (uvbench_tags_csv(inputs.data(), inputs.size(), &csv) != UVBENCH_OK) {
            return fail("tags");
        }
        std::fputs(csv, stdout);
        uvbench_string_free(csv);
        return 0;
    }

    if (*tutte) {
        size_t embedded = 0, failed = 0;
        char* log = nullptr;
        if (uvbench_baseline_tutte(tutte_manifest.c_str(), tutte_out.c_str(), &embedded, &failed,
                                   &log) != UVBENCH_OK) {
            return fail("baseline tutte");
        }
        print_log(log);
        uvbench_string_free(log);
        std::printf("embedded %zu meshes (%zu failed)\n", embedded, failed);
        return 0;
    }

    if (*report) {
        if (uvbench_report(report_csv.c_str(), report_out.c_str()) != UVBENCH_OK) {
            return fail("report");
        }
        std::printf("plots written\n");
        return 0;
    }

    return 2;
}
