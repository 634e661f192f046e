#pragma once

#include <string>
#include <utility>
#include <vector>

#include "sceneloom/bvh.hpp"
#include "sceneloom/mesh.hpp"

namespace sceneloom {

class Scene;

/// Default contact tolerance: meshes are contracted by (1 - margin) about
/// their local origin so exactly touching surfaces do not collide.
inline constexpr double kDefaultCollisionMargin = 1e-4;

using NamePair = std::pair<std::string, std::string>;

/// A mesh prepared for collision queries at one pose: contracted world
/// vertices and BVH boxes refitted to them.
class CollisionBody {
public:
    CollisionBody(const TriangleMesh& mesh, const Bvh& bvh, const Pose& pose, double margin);

    const TriangleMesh& mesh() const { return *mesh_; }
    const Bvh& bvh() const { return *bvh_; }
    const std::vector<Vec3>& world_vertices() const { return world_; }
    const std::vector<Aabb>& node_boxes() const { return boxes_; }
    const Aabb& bounds() const { return boxes_.front(); }
    Triangle world_triangle(std::uint32_t t) const;

private:
    const TriangleMesh* mesh_;
    const Bvh* bvh_;
    std::vector<Vec3> world_;
    std::vector<Aabb> boxes_;
};

/// Broad phase on world AABBs, dual-BVH descent, then tri_tri_intersect.
bool intersect_bodies(const CollisionBody& a, const CollisionBody& b);

bool intersect_meshes(const TriangleMesh& mesh_a, const Pose& pose_a, const TriangleMesh& mesh_b,
                      const Pose& pose_b, double margin = kDefaultCollisionMargin);

/// All colliding unordered pairs (first < second), sorted lexicographically.
std::vector<NamePair> detect_collisions(const Scene& scene, double margin = kDefaultCollisionMargin);

/// Reference implementation: every triangle pair of every object pair, no
/// hierarchy and no box culling.
std::vector<NamePair> brute_force_collisions(const Scene& scene, double margin = kDefaultCollisionMargin);

}  // namespace sceneloom
