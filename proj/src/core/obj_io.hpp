#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "core/deadline.hpp"
#include "core/mesh.hpp"
#include "core/vec.hpp"

namespace uvbench {

// Raw OBJ contents before triangulation. Indices are resolved to 0-based at
// parse time (including negative relative indices); texcoord index -1 means
// the corner carried none.
struct ObjCorner {
    int vertex = -1;
    int texcoord = -1;
};

struct ObjFace {
    std::vector<ObjCorner> corners;  // >= 3, polygon order preserved
};

struct ObjDocument {
    std::vector<Vec3> vertices;
    std::vector<Vec2> texcoords;
    std::vector<ObjFace> faces;
    std::string source_path;
    int ignored_directives = 0;
};

// Accepts f entries of the forms v, v/vt, v/vt/vn and v//vn (vn discarded).
// Throws malformed_record with the 1-based line number for bad numerics or
// out-of-range indices.
ObjDocument parse_obj(std::string_view text, const Deadline& deadline = {});
ObjDocument parse_obj_file(const std::string& path, const Deadline& deadline = {});

// Fan-triangulates polygons from their first corner and copies corner UVs.
// Throws mixed_uv_presence when only part of the document is textured.
TriMesh to_trimesh(const ObjDocument& doc);

// Debug/export writer: v, vt (exact duplicates shared) and v/vt faces,
// shortest round-trip float formatting.
std::string write_obj(const TriMesh& mesh);
void write_obj_file(const TriMesh& mesh, const std::string& path);

}  // namespace uvbench
