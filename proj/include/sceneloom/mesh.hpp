#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sceneloom/vec.hpp"

namespace sceneloom {

struct Aabb {
    Vec3 min{};
    Vec3 max{};

    static Aabb empty();
    bool is_empty() const { return min.x > max.x || min.y > max.y || min.z > max.z; }
    void expand(const Vec3& p);
    void expand(const Aabb& b);
    Vec3 center() const { return (min + max) * 0.5; }
    Vec3 extent() const { return max - min; }
    /// Closed-interval overlap: touching boxes overlap.
    bool overlaps(const Aabb& o) const;
    bool contains(const Aabb& o) const;

    friend bool operator==(const Aabb&, const Aabb&) = default;
};

using Triangle = std::array<Vec3, 3>;

struct TriangleMesh {
    std::vector<Vec3> vertices;
    std::vector<std::array<std::uint32_t, 3>> triangles;

    bool empty() const { return triangles.empty(); }
    Triangle triangle(std::size_t i) const
    {
        const auto& t = triangles[i];
        return {vertices[t[0]], vertices[t[1]], vertices[t[2]]};
    }
    Aabb bounds() const;

    friend bool operator==(const TriangleMesh&, const TriangleMesh&) = default;
};

/// Placement of a mesh in the world: scale, then rotation, then translation.
struct Pose {
    Vec3 position{};
    Vec3 rotation_deg{};
    Vec3 scale{1.0, 1.0, 1.0};

    friend bool operator==(const Pose&, const Pose&) = default;
};

/// Precomputed affine map for a pose.
class WorldTransform {
public:
    explicit WorldTransform(const Pose& pose, double contraction = 1.0);

    Vec3 apply(const Vec3& local) const { return rotation_ * hadamard(scale_, local) + translation_; }
    const Mat3& rotation() const { return rotation_; }

private:
    Mat3 rotation_;
    Vec3 scale_;
    Vec3 translation_;
};

/// Throws EmptyMesh / BadMesh when indices are out of range or coordinates
/// are non-finite.
void validate_mesh(const TriangleMesh& mesh);

/// Drops triangles with area <= 1e-12 and vertices no longer referenced.
TriangleMesh remove_degenerate_triangles(const TriangleMesh& mesh);

/// Translates the mesh so its AABB center sits at the origin.
TriangleMesh recenter(const TriangleMesh& mesh);

/// Uniformly rescales to max AABB extent 1 m and recenters. Throws
/// DegenerateMesh when the largest extent is zero.
TriangleMesh normalize_mesh(const TriangleMesh& mesh);

/// Exact AABB over every transformed vertex.
Aabb world_aabb(const TriangleMesh& mesh, const Pose& pose);

std::vector<Vec3> transform_vertices(const TriangleMesh& mesh, const WorldTransform& xf);

/// Minimal Wavefront OBJ support: `v` and `f` records only, polygons are
/// fan-triangulated, negative (relative) indices are honoured.
TriangleMesh parse_obj(std::string_view text);
std::string write_obj(const TriangleMesh& mesh);
TriangleMesh read_obj_file(const std::string& path);

/// Axis-aligned box mesh centered at `center` (12 triangles, outward winding).
TriangleMesh make_box(const Vec3& size, const Vec3& center = {});

}  // namespace sceneloom
