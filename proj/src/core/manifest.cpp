#include "core/manifest.hpp"

#include <fstream>
#include <sstream>
#include <unordered_set>

#include "core/csvfmt.hpp"
#include "core/error.hpp"

namespace uvbench {

std::vector<ManifestEntry> parse_manifest(std::string_view text) {
    std::vector<ManifestEntry> entries;
    std::unordered_set<std::string> ids;
    std::size_t pos = 0;
    bool saw_header = false;
    std::size_t line_no = 0;
    while (pos < text.size()) {
        std::size_t nl = text.find('\n', pos);
        if (nl == std::string_view::npos) nl = text.size();
        std::string_view line = text.substr(pos, nl - pos);
        pos = nl + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (line.empty() || line.front() == '#') continue;
        if (!saw_header) {
            if (line != kManifestHeader) {
                raise(ErrorCode::manifest_error,
                      "line " + std::to_string(line_no) + ": expected header '" +
                          std::string(kManifestHeader) + "'");
            }
            saw_header = true;
            continue;
        }
        std::vector<std::string> f = csv_split(line);
        if (f.size() != 6) {
            raise(ErrorCode::manifest_error, "line " + std::to_string(line_no) + ": expected 6 fields, got " +
                                                 std::to_string(f.size()));
        }
        ManifestEntry e;
        e.id = std::move(f[0]);
        e.reference_path = std::move(f[1]);
        e.candidate_path = std::move(f[2]);
        e.variant = std::move(f[3]);
        e.source_asset = std::move(f[4]);
        e.license = std::move(f[5]);
        if (e.id.empty()) {
            raise(ErrorCode::manifest_error, "line " + std::to_string(line_no) + ": empty id");
        }
        if (e.reference_path.empty()) {
            raise(ErrorCode::manifest_error,
                  "line " + std::to_string(line_no) + ": empty reference_path for '" + e.id + "'");
        }
        if (!ids.insert(e.id).second) {
            raise(ErrorCode::manifest_error,
                  "line " + std::to_string(line_no) + ": duplicate id '" + e.id + "'");
        }
        entries.push_back(std::move(e));
    }
    if (!saw_header) raise(ErrorCode::manifest_error, "empty manifest");
    return entries;
}

std::vector<ManifestEntry> load_manifest(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) raise(ErrorCode::manifest_error, "cannot open manifest '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_manifest(buf.str());
}

std::string manifest_csv(const std::vector<ManifestEntry>& entries) {
    std::string out = kManifestHeader;
    out.push_back('\n');
    for (const ManifestEntry& e : entries) {
        out += csv_escape(e.id);
        out.push_back(',');
        out += csv_escape(e.reference_path);
        out.push_back(',');
        out += csv_escape(e.candidate_path);
        out.push_back(',');
        out += csv_escape(e.variant);
        out.push_back(',');
        out += csv_escape(e.source_asset);
        out.push_back(',');
        out += csv_escape(e.license);
        out.push_back('\n');
    }
    return out;
}

std::filesystem::path resolve(const std::filesystem::path& base_dir, const std::string& path) {
    const std::filesystem::path p(path);
    return p.is_absolute() ? p : base_dir / p;
}

}  // namespace uvbench
