#include "sceneloom/mesh.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include <fmt/format.h>

#include "sceneloom/error.hpp"

namespace sceneloom {

Aabb Aabb::empty()
{
    constexpr double inf = std::numeric_limits<double>::infinity();
    return {{inf, inf, inf}, {-inf, -inf, -inf}};
}

void Aabb::expand(const Vec3& p)
{
    min = sceneloom::min(min, p);
    max = sceneloom::max(max, p);
}

void Aabb::expand(const Aabb& b)
{
    min = sceneloom::min(min, b.min);
    max = sceneloom::max(max, b.max);
}

bool Aabb::overlaps(const Aabb& o) const
{
    return min.x <= o.max.x && o.min.x <= max.x && min.y <= o.max.y && o.min.y <= max.y &&
           min.z <= o.max.z && o.min.z <= max.z;
}

bool Aabb::contains(const Aabb& o) const
{
    return min.x <= o.min.x && min.y <= o.min.y && min.z <= o.min.z && max.x >= o.max.x &&
           max.y >= o.max.y && max.z >= o.max.z;
}

Aabb TriangleMesh::bounds() const
{
    Aabb box = Aabb::empty();
    for (const auto& v : vertices)
        box.expand(v);
    return box;
}

WorldTransform::WorldTransform(const Pose& pose, double contraction)
    : rotation_(rotation_from_euler_degrees(pose.rotation_deg)),
      scale_(pose.scale * contraction),
      translation_(pose.position)
{
}

void validate_mesh(const TriangleMesh& mesh)
{
    if (mesh.triangles.empty() || mesh.vertices.empty())
        throw Error(ErrorCode::EmptyMesh, "mesh has no triangles");
    for (const auto& v : mesh.vertices)
        if (!is_finite(v))
            throw Error(ErrorCode::BadMesh, "non-finite vertex coordinate");
    const auto n = mesh.vertices.size();
    for (const auto& t : mesh.triangles)
        if (t[0] >= n || t[1] >= n || t[2] >= n)
            throw Error(ErrorCode::BadMesh, "triangle index out of range");
}

TriangleMesh remove_degenerate_triangles(const TriangleMesh& mesh)
{
    TriangleMesh out;
    std::vector<std::int64_t> remap(mesh.vertices.size(), -1);
    for (std::size_t i = 0; i < mesh.triangles.size(); ++i) {
        const Triangle t = mesh.triangle(i);
        const double area = 0.5 * norm(cross(t[1] - t[0], t[2] - t[0]));
        if (!(area > 1e-12))
            continue;
        std::array<std::uint32_t, 3> tri{};
        for (int k = 0; k < 3; ++k) {
            const auto src = mesh.triangles[i][k];
            if (remap[src] < 0) {
                remap[src] = static_cast<std::int64_t>(out.vertices.size());
                out.vertices.push_back(mesh.vertices[src]);
            }
            tri[k] = static_cast<std::uint32_t>(remap[src]);
        }
        out.triangles.push_back(tri);
    }
    return out;
}

TriangleMesh recenter(const TriangleMesh& mesh)
{
    TriangleMesh out = mesh;
    const Vec3 c = mesh.bounds().center();
    for (auto& v : out.vertices)
        v -= c;
    return out;
}

TriangleMesh normalize_mesh(const TriangleMesh& mesh)
{
    validate_mesh(mesh);
    const Aabb box = mesh.bounds();
    const Vec3 e = box.extent();
    const double largest = std::max({e.x, e.y, e.z});
    if (!(largest > 0.0))
        throw Error(ErrorCode::DegenerateMesh, "mesh has zero extent");
    const Vec3 c = box.center();
    TriangleMesh out = mesh;
    for (auto& v : out.vertices)
        v = (v - c) / largest;
    return out;
}

std::vector<Vec3> transform_vertices(const TriangleMesh& mesh, const WorldTransform& xf)
{
    std::vector<Vec3> out;
    out.reserve(mesh.vertices.size());
    for (const auto& v : mesh.vertices)
        out.push_back(xf.apply(v));
    return out;
}

Aabb world_aabb(const TriangleMesh& mesh, const Pose& pose)
{
    const WorldTransform xf(pose);
    Aabb box = Aabb::empty();
    for (const auto& v : mesh.vertices)
        box.expand(xf.apply(v));
    return box;
}

namespace {

std::string_view next_token(std::string_view& line)
{
    std::size_t i = 0;
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t'))
        ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t')
        ++j;
    auto tok = line.substr(i, j - i);
    line.remove_prefix(j);
    return tok;
}

double parse_double(std::string_view tok, std::size_t line_no)
{
    // strtod rather than from_chars: GCC 11 libstdc++ lacks floating from_chars.
    std::string s(tok);
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size())
        throw Error(ErrorCode::BadMesh, fmt::format("line {}: bad number '{}'", line_no, s));
    return v;
}

}  // namespace

TriangleMesh parse_obj(std::string_view text)
{
    TriangleMesh mesh;
    std::size_t line_no = 0;
    while (!text.empty()) {
        const auto eol = text.find('\n');
        std::string_view line = text.substr(0, eol);
        text.remove_prefix(eol == std::string_view::npos ? text.size() : eol + 1);
        ++line_no;
        if (!line.empty() && line.back() == '\r')
            line.remove_suffix(1);
        const auto kind = next_token(line);
        if (kind == "v") {
            Vec3 p;
            for (int k = 0; k < 3; ++k)
                p[k] = parse_double(next_token(line), line_no);
            mesh.vertices.push_back(p);
        } else if (kind == "f") {
            std::vector<std::uint32_t> poly;
            for (auto tok = next_token(line); !tok.empty(); tok = next_token(line)) {
                const auto slash = tok.find('/');
                const auto idx_tok = tok.substr(0, slash);
                long idx = 0;
                const auto [ptr, ec] = std::from_chars(idx_tok.data(), idx_tok.data() + idx_tok.size(), idx);
                if (ec != std::errc{} || ptr != idx_tok.data() + idx_tok.size() || idx == 0)
                    throw Error(ErrorCode::BadMesh, fmt::format("line {}: bad face index", line_no));
                const long n = static_cast<long>(mesh.vertices.size());
                const long resolved = idx > 0 ? idx - 1 : n + idx;
                if (resolved < 0 || resolved >= n)
                    throw Error(ErrorCode::BadMesh, fmt::format("line {}: face index out of range", line_no));
                poly.push_back(static_cast<std::uint32_t>(resolved));
            }
            if (poly.size() < 3)
                throw Error(ErrorCode::BadMesh, fmt::format("line {}: face with fewer than 3 vertices", line_no));
            for (std::size_t k = 1; k + 1 < poly.size(); ++k)
                mesh.triangles.push_back({poly[0], poly[k], poly[k + 1]});
        }
    }
    validate_mesh(mesh);
    return mesh;
}

std::string write_obj(const TriangleMesh& mesh)
{
    std::string out;
    out.reserve(mesh.vertices.size() * 64 + mesh.triangles.size() * 24);
    for (const auto& v : mesh.vertices)
        out += fmt::format("v {:.17g} {:.17g} {:.17g}\n", v.x, v.y, v.z);
    for (const auto& t : mesh.triangles)
        out += fmt::format("f {} {} {}\n", t[0] + 1, t[1] + 1, t[2] + 1);
    return out;
}

TriangleMesh read_obj_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error(ErrorCode::Io, "cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_obj(ss.str());
}

TriangleMesh make_box(const Vec3& size, const Vec3& center)
{
    TriangleMesh m;
    const Vec3 h = size * 0.5;
    for (int i = 0; i < 8; ++i)
        m.vertices.push_back(center + Vec3{(i & 1) ? h.x : -h.x, (i & 2) ? h.y : -h.y, (i & 4) ? h.z : -h.z});
    m.triangles = {
        {0, 2, 1}, {1, 2, 3},  // -z
        {4, 5, 6}, {5, 7, 6},  // +z
        {0, 1, 4}, {1, 5, 4},  // -y
        {2, 6, 3}, {3, 6, 7},  // +y
        {0, 4, 2}, {2, 4, 6},  // -x
        {1, 3, 5}, {3, 7, 5},  // +x
    };
    return m;
}

}  // namespace sceneloom
