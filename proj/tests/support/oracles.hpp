#pragma once

// Reference implementations shared by the unit and acceptance suites. None
// of them call into the library code they check.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "sceneloom/collision.hpp"
#include "sceneloom/scene.hpp"

namespace oracle {

using sceneloom::Triangle;
using sceneloom::Vec3;

inline Vec3 sub(const Vec3& a, const Vec3& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
inline double dot3(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline Vec3 cross3(const Vec3& a, const Vec3& b)
{
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

/// Separating-axis test for two closed triangles. Candidate axes: both face
/// normals, the nine edge-edge cross products and, for the coplanar case,
/// the six in-plane edge normals (17 in total). Intersecting iff no axis
/// separates the projections strictly.
inline bool sat_triangles_intersect(const Triangle& a, const Triangle& b)
{
    const std::array<Vec3, 3> ea{sub(a[1], a[0]), sub(a[2], a[1]), sub(a[0], a[2])};
    const std::array<Vec3, 3> eb{sub(b[1], b[0]), sub(b[2], b[1]), sub(b[0], b[2])};
    const Vec3 na = cross3(ea[0], ea[1]);
    const Vec3 nb = cross3(eb[0], eb[1]);

    std::vector<Vec3> axes{na, nb};
    for (const auto& u : ea)
        for (const auto& v : eb)
            axes.push_back(cross3(u, v));
    for (const auto& u : ea)
        axes.push_back(cross3(na, u));
    for (const auto& v : eb)
        axes.push_back(cross3(nb, v));

    for (const auto& axis : axes) {
        if (dot3(axis, axis) < 1e-30)
            continue;
        double amin = dot3(axis, a[0]), amax = amin, bmin = dot3(axis, b[0]), bmax = bmin;
        for (int i = 1; i < 3; ++i) {
            amin = std::min(amin, dot3(axis, a[i]));
            amax = std::max(amax, dot3(axis, a[i]));
            bmin = std::min(bmin, dot3(axis, b[i]));
            bmax = std::max(bmax, dot3(axis, b[i]));
        }
        if (amax < bmin || bmax < amin)
            return false;
    }
    return true;
}

/// 4x4 matrix pipeline: look-at view matrix, OpenGL-style perspective,
/// homogeneous divide, viewport transform with the origin at the top left.
struct Projected {
    double x, y, w;
};

inline std::optional<Projected> matrix_project(const Vec3& target, double azimuth_deg, double elevation_deg,
                                               double distance, double fov_deg, const Vec3& p, int width, int height)
{
    using M4 = std::array<std::array<double, 4>, 4>;
    const double az = azimuth_deg * M_PI / 180.0, el = elevation_deg * M_PI / 180.0;
    const Vec3 eye{target.x + distance * std::sin(az) * std::cos(el), target.y - distance * std::cos(az) * std::cos(el),
                   target.z + distance * std::sin(el)};
    const Vec3 up = elevation_deg >= 90.0 ? Vec3{-std::sin(az), std::cos(az), 0.0} : Vec3{0, 0, 1};

    auto unit = [](Vec3 v) {
        const double n = std::sqrt(dot3(v, v));
        return Vec3{v.x / n, v.y / n, v.z / n};
    };
    const Vec3 f = unit(sub(target, eye));
    const Vec3 s = unit(cross3(f, up));
    const Vec3 u = cross3(s, f);
    const M4 view{{{s.x, s.y, s.z, -dot3(s, eye)},
                   {u.x, u.y, u.z, -dot3(u, eye)},
                   {-f.x, -f.y, -f.z, dot3(f, eye)},
                   {0, 0, 0, 1}}};
    const double aspect = static_cast<double>(width) / height;
    const double g = 1.0 / std::tan(fov_deg * M_PI / 360.0);
    const double n = 0.01, fa = 1000.0;
    const M4 proj{{{g / aspect, 0, 0, 0}, {0, g, 0, 0}, {0, 0, (fa + n) / (n - fa), 2 * fa * n / (n - fa)}, {0, 0, -1, 0}}};

    const std::array<double, 4> hp{p.x, p.y, p.z, 1.0};
    std::array<double, 4> v{}, c{};
    for (int i = 0; i < 4; ++i)
        for (int k = 0; k < 4; ++k)
            v[i] += view[i][k] * hp[k];
    for (int i = 0; i < 4; ++i)
        for (int k = 0; k < 4; ++k)
            c[i] += proj[i][k] * v[k];
    if (c[3] <= 1e-12)
        return std::nullopt;
    const double nx = c[0] / c[3], ny = c[1] / c[3];
    return Projected{(nx + 1.0) * 0.5 * width, (1.0 - ny) * 0.5 * height, c[3]};
}

inline Vec3 random_point(std::mt19937_64& rng, double lo, double hi)
{
    std::uniform_real_distribution<double> d(lo, hi);
    return {d(rng), d(rng), d(rng)};
}

inline Triangle random_triangle(std::mt19937_64& rng, double lo = -1.0, double hi = 1.0)
{
    return {random_point(rng, lo, hi), random_point(rng, lo, hi), random_point(rng, lo, hi)};
}

/// Triangle soup of `n` small triangles scattered in a unit box, plus one
/// spanning triangle so the mesh is never too thin to normalize.
inline sceneloom::TriangleMesh random_mesh(std::mt19937_64& rng, int n)
{
    sceneloom::TriangleMesh m;
    std::uniform_real_distribution<double> u(-0.5, 0.5), s(-0.25, 0.25);
    m.vertices = {{-0.5, -0.5, -0.5}, {0.5, -0.5, 0.0}, {0.0, 0.5, 0.5}};
    m.triangles.push_back({0, 1, 2});
    for (int i = 1; i < n; ++i) {
        const Vec3 c{u(rng), u(rng), u(rng)};
        const auto base = static_cast<std::uint32_t>(m.vertices.size());
        for (int k = 0; k < 3; ++k)
            m.vertices.push_back({c.x + s(rng), c.y + s(rng), c.z + s(rng)});
        m.triangles.push_back({base, base + 1, base + 2});
    }
    return m;
}

/// Random scene: up to `max_objects` random meshes of up to `max_tris`
/// triangles, crowded into a few square meters so that many pairs collide.
inline sceneloom::Scene random_scene(std::mt19937_64& rng, int max_objects = 20, int max_tris = 200)
{
    std::uniform_int_distribution<int> count(1, max_objects), tris(1, max_tris);
    std::uniform_real_distribution<double> xy(-1.5, 1.5), z(0.0, 1.0), ang(-180.0, 180.0), sc(0.4, 1.4);
    sceneloom::Scene scene;
    const int n = count(rng);
    for (int i = 0; i < n; ++i) {
        const std::string name = "o" + std::to_string(i);
        scene.add_object(name, random_mesh(rng, tris(rng)));
        scene.set_scale(name, Vec3{sc(rng), sc(rng), sc(rng)});
        scene.rotate(name, sceneloom::Axis::X, ang(rng));
        scene.rotate(name, sceneloom::Axis::Y, ang(rng));
        scene.rotate(name, sceneloom::Axis::Z, ang(rng));
        scene.place(name, {xy(rng), xy(rng), z(rng)});
    }
    return scene;
}

/// World AABB from every transformed vertex, using its own Euler matrices.
inline sceneloom::Aabb vertex_aabb(const sceneloom::TriangleMesh& mesh, const sceneloom::Pose& pose)
{
    const double rx = pose.rotation_deg.x * M_PI / 180, ry = pose.rotation_deg.y * M_PI / 180,
                 rz = pose.rotation_deg.z * M_PI / 180;
    sceneloom::Aabb box{{1e300, 1e300, 1e300}, {-1e300, -1e300, -1e300}};
    for (const auto& v0 : mesh.vertices) {
        Vec3 v{v0.x * pose.scale.x, v0.y * pose.scale.y, v0.z * pose.scale.z};
        v = {v.x, std::cos(rx) * v.y - std::sin(rx) * v.z, std::sin(rx) * v.y + std::cos(rx) * v.z};
        v = {std::cos(ry) * v.x + std::sin(ry) * v.z, v.y, -std::sin(ry) * v.x + std::cos(ry) * v.z};
        v = {std::cos(rz) * v.x - std::sin(rz) * v.y, std::sin(rz) * v.x + std::cos(rz) * v.y, v.z};
        v = {v.x + pose.position.x, v.y + pose.position.y, v.z + pose.position.z};
        box.min = {std::min(box.min.x, v.x), std::min(box.min.y, v.y), std::min(box.min.z, v.z)};
        box.max = {std::max(box.max.x, v.x), std::max(box.max.y, v.y), std::max(box.max.z, v.z)};
    }
    return box;
}

}  // namespace oracle
