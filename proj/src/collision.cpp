#include "sceneloom/collision.hpp"

#include <algorithm>

#include "sceneloom/error.hpp"
#include "sceneloom/scene.hpp"
#include "sceneloom/tri_tri.hpp"

namespace sceneloom {

CollisionBody::CollisionBody(const TriangleMesh& mesh, const Bvh& bvh, const Pose& pose, double margin)
    : mesh_(&mesh), bvh_(&bvh)
{
    if (margin < 0.0)
        throw Error(ErrorCode::BadConfig, "collision margin must be >= 0");
    world_ = transform_vertices(mesh, WorldTransform(pose, 1.0 - margin));
    boxes_ = bvh.refit(mesh, world_);
}

Triangle CollisionBody::world_triangle(std::uint32_t t) const
{
    const auto& idx = mesh_->triangles[t];
    return {world_[idx[0]], world_[idx[1]], world_[idx[2]]};
}

namespace {

Aabb triangle_box(const CollisionBody& body, std::uint32_t t)
{
    Aabb out = Aabb::empty();
    for (const auto& v : body.world_triangle(t))
        out.expand(v);
    return out;
}

bool descend(const CollisionBody& a, std::int32_t na, const CollisionBody& b, std::int32_t nb)
{
    if (!a.node_boxes()[na].overlaps(b.node_boxes()[nb]))
        return false;
    const auto& node_a = a.bvh().nodes()[na];
    const auto& node_b = b.bvh().nodes()[nb];

    if (node_a.is_leaf() && node_b.is_leaf()) {
        for (auto ta : a.bvh().leaf_triangles(node_a)) {
            if (!triangle_box(a, ta).overlaps(b.node_boxes()[nb]))
                continue;
            const Triangle tri_a = a.world_triangle(ta);
            for (auto tb : b.bvh().leaf_triangles(node_b))
                if (tri_tri_intersect(tri_a, b.world_triangle(tb)))
                    return true;
        }
        return false;
    }

    // Split the larger internal node first.
    const auto volume = [](const Aabb& box) {
        const Vec3 e = box.extent();
        return e.x * e.y * e.z + e.x + e.y + e.z;
    };
    const bool split_a = !node_a.is_leaf() &&
                         (node_b.is_leaf() || volume(a.node_boxes()[na]) >= volume(b.node_boxes()[nb]));
    if (split_a)
        return descend(a, node_a.left, b, nb) || descend(a, node_a.right, b, nb);
    return descend(a, na, b, node_b.left) || descend(a, na, b, node_b.right);
}

std::vector<CollisionBody> prepare(const Scene& scene, double margin)
{
    std::vector<CollisionBody> bodies;
    bodies.reserve(scene.objects().size());
    for (const auto& obj : scene.objects())
        bodies.emplace_back(*obj.mesh, *obj.bvh, obj.pose, margin);
    return bodies;
}

NamePair ordered(const std::string& a, const std::string& b)
{
    return a < b ? NamePair{a, b} : NamePair{b, a};
}

}  // namespace

bool intersect_bodies(const CollisionBody& a, const CollisionBody& b)
{
    if (!a.bounds().overlaps(b.bounds()))
        return false;
    return descend(a, 0, b, 0);
}

bool intersect_meshes(const TriangleMesh& mesh_a, const Pose& pose_a, const TriangleMesh& mesh_b,
                      const Pose& pose_b, double margin)
{
    const Bvh bvh_a = Bvh::build(mesh_a);
    const Bvh bvh_b = Bvh::build(mesh_b);
    return intersect_bodies(CollisionBody(mesh_a, bvh_a, pose_a, margin), CollisionBody(mesh_b, bvh_b, pose_b, margin));
}

std::vector<NamePair> detect_collisions(const Scene& scene, double margin)
{
    const auto bodies = prepare(scene, margin);
    const auto& objs = scene.objects();
    std::vector<NamePair> pairs;
    for (std::size_t i = 0; i < bodies.size(); ++i)
        for (std::size_t j = i + 1; j < bodies.size(); ++j)
            if (intersect_bodies(bodies[i], bodies[j]))
                pairs.push_back(ordered(objs[i].name, objs[j].name));
    std::sort(pairs.begin(), pairs.end());
    return pairs;
}

std::vector<NamePair> brute_force_collisions(const Scene& scene, double margin)
{
    const auto& objs = scene.objects();
    std::vector<std::vector<Vec3>> world;
    for (const auto& obj : objs)
        world.push_back(transform_vertices(*obj.mesh, WorldTransform(obj.pose, 1.0 - margin)));

    auto tri = [&](std::size_t o, std::size_t t) {
        const auto& idx = objs[o].mesh->triangles[t];
        return Triangle{world[o][idx[0]], world[o][idx[1]], world[o][idx[2]]};
    };

    std::vector<NamePair> pairs;
    for (std::size_t i = 0; i < objs.size(); ++i) {
        for (std::size_t j = i + 1; j < objs.size(); ++j) {
            bool hit = false;
            for (std::size_t ti = 0; ti < objs[i].mesh->triangles.size() && !hit; ++ti)
                for (std::size_t tj = 0; tj < objs[j].mesh->triangles.size() && !hit; ++tj)
                    hit = tri_tri_intersect(tri(i, ti), tri(j, tj));
            if (hit)
                pairs.push_back(ordered(objs[i].name, objs[j].name));
        }
    }
    std::sort(pairs.begin(), pairs.end());
    return pairs;
}

}  // namespace sceneloom
