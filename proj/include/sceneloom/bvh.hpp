#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "sceneloom/mesh.hpp"

namespace sceneloom {

/// Binary bounding-volume hierarchy over a mesh's triangles. Nodes are
/// stored depth-first; leaves reference a contiguous range of `order()`.
class Bvh {
public:
    static constexpr std::size_t kLeafSize = 4;

    struct Node {
        Aabb box;
        std::int32_t left = -1;   // child indices, -1 for leaves
        std::int32_t right = -1;
        std::uint32_t first = 0;  // range into order() for leaves
        std::uint32_t count = 0;

        bool is_leaf() const { return left < 0; }
    };

    /// Median split over the longest axis of the triangle-centroid AABB.
    /// Throws EmptyMesh.
    static Bvh build(const TriangleMesh& mesh);

    const std::vector<Node>& nodes() const { return nodes_; }
    const std::vector<std::uint32_t>& order() const { return order_; }
    std::span<const std::uint32_t> leaf_triangles(const Node& leaf) const
    {
        return std::span<const std::uint32_t>(order_).subspan(leaf.first, leaf.count);
    }

    /// Node boxes recomputed for world-space vertex positions, keeping the
    /// topology. Indexed like nodes().
    std::vector<Aabb> refit(const TriangleMesh& mesh, std::span<const Vec3> world_vertices) const;

private:
    std::vector<Node> nodes_;
    std::vector<std::uint32_t> order_;
};

}  // namespace sceneloom
