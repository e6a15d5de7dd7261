#include "core/csvfmt.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <system_error>

#include "core/error.hpp"

namespace uvbench {

std::string format_double(double value) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0.0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, res.ptr);
}

double parse_double(std::string_view text) {
    if (!text.empty() && text.front() == '+') text.remove_prefix(1);
    double value = 0.0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
    if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
        raise(ErrorCode::malformed_record, "bad numeric field '" + std::string(text) + "'");
    }
    return value;
}

std::string csv_escape(std::string_view field) {
    if (field.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(field);
    std::string out;
    out.reserve(field.size() + 2);
    out.push_back('"');
    for (char c : field) {
        if (c == '"') out.push_back('"');
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

std::vector<std::string> csv_split(std::string_view line) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur.push_back('"');
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur.push_back(c);
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(std::move(cur));
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    fields.push_back(std::move(cur));
    return fields;
}

namespace {

const char* bool_cell(bool v) { return v ? "true" : "false"; }

void append_cell(std::string& out, std::string_view cell) {
    out.push_back(',');
    out.append(cell);
}

void append_opt_long(std::string& out, const std::optional<long>& v) {
    append_cell(out, v ? std::to_string(*v) : "");
}

void append_opt_double(std::string& out, const std::optional<double>& v) {
    append_cell(out, v ? format_double(*v) : "");
}

std::optional<long> parse_opt_long(const std::string& cell) {
    if (cell.empty()) return std::nullopt;
    long value = 0;
    const auto res = std::from_chars(cell.data(), cell.data() + cell.size(), value);
    if (res.ec != std::errc() || res.ptr != cell.data() + cell.size()) {
        raise(ErrorCode::malformed_record, "bad integer field '" + cell + "'");
    }
    return value;
}

std::optional<double> parse_opt_double(const std::string& cell) {
    if (cell.empty()) return std::nullopt;
    return parse_double(cell);
}

bool parse_bool(const std::string& cell) {
    if (cell == "true") return true;
    if (cell == "false") return false;
    raise(ErrorCode::malformed_record, "bad boolean field '" + cell + "'");
}

}  // namespace

std::string report_csv(std::span<const MeshReport> rows) {
    std::string out = kReportHeader;
    out.push_back('\n');
    for (const MeshReport& r : rows) {
        out.append(csv_escape(r.filename));
        append_opt_long(out, r.n_vertices);
        append_opt_long(out, r.n_faces);
        if (r.tags) {
            append_cell(out, bool_cell(r.tags->disk));
            append_cell(out, bool_cell(r.tags->closed));
            append_cell(out, bool_cell(r.tags->manifold));
            append_cell(out, bool_cell(r.tags->small));
        } else {
            out.append(",,,,");
        }
        append_opt_long(out, r.genus);
        append_opt_long(out, r.n_boundary_loops);
        append_opt_double(out, r.pct_boundary_faces);
        if (r.metrics) {
            const MeshMetrics& m = *r.metrics;
            append_cell(out, format_double(m.max_area_distortion));
            append_cell(out, format_double(m.avg_area_discrepancy));
            append_cell(out, format_double(m.min_singular));
            append_cell(out, format_double(m.max_singular));
            append_cell(out, format_double(m.pct_flipped));
            append_cell(out, format_double(m.max_angle_distortion));
            append_cell(out, format_double(m.avg_angle_discrepancy));
            append_cell(out, format_double(m.symmetric_dirichlet));
            append_cell(out, format_double(m.resolution));
            append_opt_double(out, m.artist_correlation);
            append_cell(out, bool_cell(m.remeshed));
            append_opt_double(out, m.cut_length);
            append_opt_double(out, m.artist_cut_match);
        } else {
            out.append(",,,,,,,,,,,,,");
        }
        out.push_back('\n');
    }
    return out;
}

std::vector<MeshReport> parse_report_csv(std::string_view text) {
    std::vector<MeshReport> rows;
    std::size_t pos = 0;
    bool saw_header = false;
    while (pos < text.size()) {
        std::size_t nl = text.find('\n', pos);
        if (nl == std::string_view::npos) nl = text.size();
        std::string_view line = text.substr(pos, nl - pos);
        pos = nl + 1;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (line.empty()) continue;
        if (!saw_header) {
            if (line != kReportHeader) {
                raise(ErrorCode::malformed_record, "unexpected report header");
            }
            saw_header = true;
            continue;
        }
        const std::vector<std::string> f = csv_split(line);
        if (f.size() != 23) {
            raise(ErrorCode::malformed_record,
                  "expected 23 fields, got " + std::to_string(f.size()));
        }
        MeshReport r;
        r.filename = f[0];
        r.id = f[0];
        r.n_vertices = parse_opt_long(f[1]);
        r.n_faces = parse_opt_long(f[2]);
        if (!f[3].empty()) {
            TagSet tags;
            tags.disk = parse_bool(f[3]);
            tags.closed = parse_bool(f[4]);
            tags.manifold = parse_bool(f[5]);
            tags.small = parse_bool(f[6]);
            r.tags = tags;
        }
        r.genus = parse_opt_long(f[7]);
        r.n_boundary_loops = parse_opt_long(f[8]);
        r.pct_boundary_faces = parse_opt_double(f[9]);
        if (!f[10].empty()) {
            MeshMetrics m;
            m.max_area_distortion = parse_double(f[10]);
            m.avg_area_discrepancy = parse_double(f[11]);
            m.min_singular = parse_double(f[12]);
            m.max_singular = parse_double(f[13]);
            m.pct_flipped = parse_double(f[14]);
            m.max_angle_distortion = parse_double(f[15]);
            m.avg_angle_discrepancy = parse_double(f[16]);
            m.symmetric_dirichlet = parse_double(f[17]);
            m.resolution = parse_double(f[18]);
            m.artist_correlation = parse_opt_double(f[19]);
            m.remeshed = parse_bool(f[20]);
            m.cut_length = parse_opt_double(f[21]);
            m.artist_cut_match = parse_opt_double(f[22]);
            r.metrics = m;
        }
        rows.push_back(std::move(r));
    }
    if (!saw_header) raise(ErrorCode::malformed_record, "empty report file");
    return rows;
}

std::string triangle_csv(std::span<const TriangleRow> rows) {
    std::string out = "face_index,cand_sigma1,cand_sigma2,ref_sigma1,ref_sigma2\n";
    for (const TriangleRow& r : rows) {
        out.append(std::to_string(r.face_index));
        append_cell(out, format_double(r.cand_sigma1));
        append_cell(out, format_double(r.cand_sigma2));
        append_opt_double(out, r.ref_sigma1);
        append_opt_double(out, r.ref_sigma2);
        out.push_back('\n');
    }
    return out;
}

}  // namespace uvbench
