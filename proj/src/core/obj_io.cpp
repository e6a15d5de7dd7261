#include "core/obj_io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <utility>

#include "core/csvfmt.hpp"
#include "core/error.hpp"

namespace uvbench {

namespace {

[[noreturn]] void malformed(size_t line, const std::string& what) {
    raise(ErrorCode::malformed_record, "line " + std::to_string(line) + ": " + what);
}

std::string_view trim(std::string_view s) {
    size_t b = 0, e = s.size();
    while (b < e && (s[b] == ' ' || s[b] == '\t' || s[b] == '\r')) ++b;
    while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r')) --e;
    return s.substr(b, e - b);
}

// Splits off the next whitespace-delimited token; empty when exhausted.
std::string_view next_token(std::string_view& rest) {
    size_t b = 0;
    while (b < rest.size() && (rest[b] == ' ' || rest[b] == '\t')) ++b;
    size_t e = b;
    while (e < rest.size() && rest[e] != ' ' && rest[e] != '\t') ++e;
    std::string_view tok = rest.substr(b, e - b);
    rest = rest.substr(e);
    return tok;
}

double parse_double(std::string_view tok, size_t line) {
    double value = 0.0;
    const char* first = tok.data();
    const char* last = tok.data() + tok.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last)
        malformed(line, "bad number '" + std::string(tok) + "'");
    return value;
}

long parse_long(std::string_view tok, size_t line) {
    long value = 0;
    const char* first = tok.data();
    const char* last = tok.data() + tok.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last)
        malformed(line, "bad index '" + std::string(tok) + "'");
    return value;
}

// OBJ indices are 1-based; negative values count back from the records seen
// so far. Returns 0-based.
int resolve_index(long raw, size_t defined, size_t line, const char* kind) {
    long idx = raw;
    if (idx < 0) idx = static_cast<long>(defined) + idx;  // -1 -> last defined
    else if (idx > 0) idx -= 1;
    else malformed(line, std::string(kind) + " index 0 is invalid");
    if (idx < 0 || idx >= static_cast<long>(defined))
        malformed(line, std::string(kind) + " index " + std::to_string(raw) + " out of range");
    return static_cast<int>(idx);
}

}  // namespace

ObjDocument parse_obj(std::string_view text, const Deadline& deadline) {
    ObjDocument doc;
    size_t line_no = 0;
    size_t pos = 0;

    while (pos < text.size()) {
        size_t eol = text.find('\n', pos);
        if (eol == std::string_view::npos) eol = text.size();
        std::string_view line = trim(text.substr(pos, eol - pos));
        pos = eol + 1;
        ++line_no;
        if ((line_no & 0x1fff) == 0) deadline.check();

        if (line.empty() || line[0] == '#') continue;

        std::string_view rest = line;
        const std::string_view tag = next_token(rest);

        if (tag == "v") {
            Vec3 v;
            v.x = parse_double(next_token(rest), line_no);
            v.y = parse_double(next_token(rest), line_no);
            v.z = parse_double(next_token(rest), line_no);
            // extra components (w, vertex colors) are permitted and ignored
            doc.vertices.push_back(v);
        } else if (tag == "vt") {
            Vec2 t;
            t.x = parse_double(next_token(rest), line_no);
            std::string_view ytok = next_token(rest);
            t.y = ytok.empty() ? 0.0 : parse_double(ytok, line_no);
            doc.texcoords.push_back(t);
        } else if (tag == "f") {
            ObjFace face;
            for (std::string_view tok = next_token(rest); !tok.empty(); tok = next_token(rest)) {
                ObjCorner corner;
                const size_t s1 = tok.find('/');
                if (s1 == std::string_view::npos) {
                    corner.vertex = resolve_index(parse_long(tok, line_no), doc.vertices.size(),
                                                  line_no, "vertex");
                } else {
                    corner.vertex = resolve_index(parse_long(tok.substr(0, s1), line_no),
                                                  doc.vertices.size(), line_no, "vertex");
                    std::string_view after = tok.substr(s1 + 1);
                    const size_t s2 = after.find('/');
                    std::string_view vt = s2 == std::string_view::npos ? after : after.substr(0, s2);
                    if (!vt.empty())
                        corner.texcoord = resolve_index(parse_long(vt, line_no),
                                                        doc.texcoords.size(), line_no, "texcoord");
                    // the normal index, when present, is discarded
                }
                face.corners.push_back(corner);
            }
            if (face.corners.size() < 3) malformed(line_no, "face with fewer than 3 corners");
            doc.faces.push_back(std::move(face));
        } else {
            ++doc.ignored_directives;
        }
    }
    return doc;
}

ObjDocument parse_obj_file(const std::string& path, const Deadline& deadline) {
    std::ifstream in(path, std::ios::binary);
    if (!in) raise(ErrorCode::io, "cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) raise(ErrorCode::io, "error reading '" + path + "'");
    ObjDocument doc = parse_obj(buf.str(), deadline);
    doc.source_path = path;
    return doc;
}

TriMesh to_trimesh(const ObjDocument& doc) {
    bool any_textured = false;
    bool any_bare = false;
    for (const auto& face : doc.faces) {
        for (const auto& corner : face.corners) {
            (corner.texcoord >= 0 ? any_textured : any_bare) = true;
        }
    }
    if (any_textured && any_bare)
        raise(ErrorCode::mixed_uv_presence,
              "some faces carry texcoord indices and others do not");

    TriMesh mesh;
    mesh.vertices = doc.vertices;
    for (const auto& face : doc.faces) {
        // fan triangulation anchored at the first corner
        for (size_t k = 1; k + 1 < face.corners.size(); ++k) {
            const ObjCorner c0 = face.corners[0];
            const ObjCorner c1 = face.corners[k];
            const ObjCorner c2 = face.corners[k + 1];
            mesh.faces.push_back({c0.vertex, c1.vertex, c2.vertex});
            if (any_textured) {
                mesh.uv_corners.push_back(doc.texcoords[c0.texcoord]);
                mesh.uv_corners.push_back(doc.texcoords[c1.texcoord]);
                mesh.uv_corners.push_back(doc.texcoords[c2.texcoord]);
            }
        }
    }
    mesh.validate();
    return mesh;
}

std::string write_obj(const TriMesh& mesh) {
    std::string out;
    out.reserve(32 * mesh.vertices.size() + 16 * mesh.faces.size());
    for (const auto& v : mesh.vertices) {
        out += "v ";
        out += format_double(v.x);
        out += ' ';
        out += format_double(v.y);
        out += ' ';
        out += format_double(v.z);
        out += '\n';
    }

    const bool textured = mesh.has_uvs();
    std::vector<int> corner_vt(mesh.uv_corners.size(), -1);
    if (textured) {
        // share exactly equal texcoords so seams stay visible in the file
        std::map<std::pair<double, double>, int> dedup;
        for (size_t c = 0; c < mesh.uv_corners.size(); ++c) {
            const Vec2& t = mesh.uv_corners[c];
            auto [it, inserted] = dedup.try_emplace({t.x, t.y}, static_cast<int>(dedup.size()));
            corner_vt[c] = it->second;
            if (inserted) {
                out += "vt ";
                out += format_double(t.x);
                out += ' ';
                out += format_double(t.y);
                out += '\n';
            }
        }
    }

    for (size_t f = 0; f < mesh.faces.size(); ++f) {
        out += 'f';
        for (int k = 0; k < 3; ++k) {
            out += ' ';
            out += std::to_string(mesh.faces[f][k] + 1);
            if (textured) {
                out += '/';
                out += std::to_string(corner_vt[3 * f + k] + 1);
            }
        }
        out += '\n';
    }
    return out;
}

void write_obj_file(const TriMesh& mesh, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) raise(ErrorCode::output_io_error, "cannot open '" + path + "' for writing");
    const std::string text = write_obj(mesh);
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out) raise(ErrorCode::output_io_error, "error writing '" + path + "'");
}

}  // namespace uvbench
