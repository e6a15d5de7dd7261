#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "core/manifest.hpp"
#include "core/report.hpp"

namespace uvbench {

enum class TagFilter { ignore, require, forbid };

struct RunConfig {
    std::filesystem::path manifest_path;
    std::filesystem::path out_dir;
    TagFilter disk = TagFilter::ignore;
    TagFilter closed = TagFilter::ignore;
    TagFilter manifold = TagFilter::ignore;
    TagFilter small = TagFilter::ignore;
    int workers = 0;  // <= 0: UVBENCH_WORKERS env var, then hardware concurrency
    double timeout_seconds = 300.0;
    double tiny_area = 1e-8;
    std::vector<std::string> interesting;
};

struct RunSummary {
    std::size_t n_selected = 0;   // manifest entries that passed tag filters
    std::size_t n_success = 0;    // rows with metrics
    std::size_t n_empty = 0;      // rows without metrics
    std::size_t n_filtered = 0;   // entries omitted by tag filters
    std::vector<std::pair<std::string, std::string>> failures;  // id, reason
    std::filesystem::path report_path;
};

int resolve_workers(int requested);
bool passes_filters(const TagSet& tags, const RunConfig& config);

// Full benchmark: parse, tag-filter, measure in parallel, then write
// report.csv, per-triangle CSVs for the interesting meshes, and SVG plots,
// all atomically. One row per selected manifest entry, in manifest order.
RunSummary run_benchmark(const RunConfig& config);

// Tutte baseline over the manifest's reference meshes. Writes <id>_tutte.obj
// per disk mesh plus a manifest.csv pointing candidates at them; meshes the
// embedding cannot handle keep an empty candidate_path.
struct BaselineSummary {
    std::size_t n_embedded = 0;
    std::vector<std::pair<std::string, std::string>> failures;
    std::filesystem::path manifest_path;
};
BaselineSummary run_baseline_tutte(const std::filesystem::path& manifest_path,
                                   const std::filesystem::path& out_dir);

// Topology and tag columns for ad-hoc inspection, one row per input file.
std::string tags_csv(const std::vector<std::filesystem::path>& inputs);

struct PreprocessSummary {
    std::vector<std::string> written;  // component file names
    std::vector<std::pair<std::string, std::string>> skipped;  // input, reason
    std::filesystem::path manifest_path;
};
PreprocessSummary run_preprocess(const std::vector<std::filesystem::path>& inputs,
                                 const std::filesystem::path& out_dir, bool cut_variant,
                                 int max_components);

// Re-derives the plots from an existing report CSV (no scatter plots: those
// need reference measurements that the CSV does not carry).
void run_report(const std::filesystem::path& csv_path, const std::filesystem::path& out_dir);

// Atomic text output: writes to a sibling temp file, then renames.
void write_text_atomic(const std::filesystem::path& path, const std::string& content);

}  // namespace uvbench
