#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace uvbench {

// One benchmark input: the artist (reference) mesh and, optionally, the
// method-under-test (candidate) mesh. Paths are kept as written; resolve()
// interprets relative paths against the manifest's directory.
struct ManifestEntry {
    std::string id;
    std::string reference_path;
    std::string candidate_path;
    std::string variant;  // "cut", "uncut", or free-form
    std::string source_asset;
    std::string license;
};

inline constexpr const char* kManifestHeader =
    "id,reference_path,candidate_path,variant,source_asset,license";

std::vector<ManifestEntry> parse_manifest(std::string_view text);
std::vector<ManifestEntry> load_manifest(const std::filesystem::path& path);
std::string manifest_csv(const std::vector<ManifestEntry>& entries);

std::filesystem::path resolve(const std::filesystem::path& base_dir, const std::string& path);

}  // namespace uvbench
