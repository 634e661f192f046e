#include "sceneloom/bvh.hpp"

#include <algorithm>

#include "sceneloom/error.hpp"

namespace sceneloom {
namespace {

struct Builder {
    const TriangleMesh& mesh;
    std::vector<Vec3> centroids;
    std::vector<Bvh::Node>& nodes;
    std::vector<std::uint32_t>& order;

    Aabb triangle_box(std::uint32_t t) const
    {
        Aabb b = Aabb::empty();
        for (auto v : mesh.triangles[t])
            b.expand(mesh.vertices[v]);
        return b;
    }

    std::int32_t build(std::uint32_t first, std::uint32_t count)
    {
        const auto index = static_cast<std::int32_t>(nodes.size());
        nodes.emplace_back();

        Aabb box = Aabb::empty();
        Aabb centroid_box = Aabb::empty();
        for (std::uint32_t i = first; i < first + count; ++i) {
            box.expand(triangle_box(order[i]));
            centroid_box.expand(centroids[order[i]]);
        }
        nodes[index].box = box;

        if (count <= Bvh::kLeafSize) {
            nodes[index].first = first;
            nodes[index].count = count;
            return index;
        }

        const Vec3 e = centroid_box.extent();
        int axis = 0;
        if (e.y > e[axis])
            axis = 1;
        if (e.z > e[axis])
            axis = 2;

        // Full sort with index tie-break keeps the split platform-independent.
        auto begin = order.begin() + first;
        std::sort(begin, begin + count, [&](std::uint32_t a, std::uint32_t b) {
            const double ca = centroids[a][axis], cb = centroids[b][axis];
            return ca < cb || (ca == cb && a < b);
        });

        const std::uint32_t half = count / 2;
        const auto left = build(first, half);
        const auto right = build(first + half, count - half);
        nodes[index].left = left;
        nodes[index].right = right;
        return index;
    }
};

}  // namespace

Bvh Bvh::build(const TriangleMesh& mesh)
{
    if (mesh.triangles.empty())
        throw Error(ErrorCode::EmptyMesh, "cannot build a BVH over an empty mesh");
    Bvh bvh;
    bvh.order_.resize(mesh.triangles.size());
    for (std::uint32_t i = 0; i < bvh.order_.size(); ++i)
        bvh.order_[i] = i;

    Builder b{mesh, {}, bvh.nodes_, bvh.order_};
    b.centroids.reserve(mesh.triangles.size());
    for (std::size_t i = 0; i < mesh.triangles.size(); ++i) {
        const Triangle t = mesh.triangle(i);
        b.centroids.push_back((t[0] + t[1] + t[2]) / 3.0);
    }
    bvh.nodes_.reserve(2 * mesh.triangles.size() / kLeafSize + 1);
    b.build(0, static_cast<std::uint32_t>(mesh.triangles.size()));
    return bvh;
}

std::vector<Aabb> Bvh::refit(const TriangleMesh& mesh, std::span<const Vec3> world_vertices) const
{
    std::vector<Aabb> boxes(nodes_.size(), Aabb::empty());
    // Children always have larger indices than their parent.
    for (std::size_t i = nodes_.size(); i-- > 0;) {
        const Node& n = nodes_[i];
        if (n.is_leaf()) {
            for (auto t : leaf_triangles(n))
                for (auto v : mesh.triangles[t])
                    boxes[i].expand(world_vertices[v]);
        } else {
            boxes[i].expand(boxes[n.left]);
            boxes[i].expand(boxes[n.right]);
        }
    }
    return boxes;
}

}  // namespace sceneloom
