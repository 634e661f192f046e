#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sceneloom/bvh.hpp"
#include "sceneloom/image.hpp"
#include "sceneloom/mesh.hpp"

namespace sceneloom {

enum class Axis { X = 0, Y = 1, Z = 2 };

/// Case-insensitive "x" / "y" / "z". Throws BadAxis.
Axis parse_axis(std::string_view text);
std::string_view to_string(Axis axis);

/// Named mesh instance. Mesh and BVH are immutable and shared between
/// duplicates.
struct SceneObject {
    std::string name;
    std::shared_ptr<const TriangleMesh> mesh;
    std::shared_ptr<const Bvh> bvh;
    Pose pose;

    /// Local AABB extents times scale; independent of rotation.
    Vec3 size() const;
    Aabb world_bounds() const { return world_aabb(*mesh, pose); }
};

/// Minimum world z any object may reach after a batch.
inline constexpr double kFloorTolerance = 1e-6;

/// Objects in insertion order plus the floor. Every mutating call applies
/// the floor rule (auto_lift) to the object it touched.
class Scene {
public:
    /// Recenters the mesh, builds its BVH and places it at x = y = 0 on the
    /// highest overlapping surface. Throws DuplicateName, EmptyMesh.
    const SceneObject& add_object(const std::string& name, const TriangleMesh& mesh);

    void place(std::string_view name, const Vec3& position);
    void translate(std::string_view name, Axis axis, double distance);
    /// Absolute set of one Euler component, stored normalized to [-180, 180).
    void rotate(std::string_view name, Axis axis, double angle_degrees);
    void set_scale(std::string_view name, double uniform);
    void set_scale(std::string_view name, const Vec3& scale);
    /// Copies named `<name>_<k>` with the first free k >= 2, stacked
    /// sequentially at the origin. Returns the new names.
    std::vector<std::string> duplicate(std::string_view name, int count);
    void remove(std::string_view name);
    /// Lifts the object so its world AABB bottom is at z = 0 when it is
    /// below the floor. Never lowers an object.
    void auto_lift(std::string_view name);

    /// z for a mesh posed at x = y = 0 so that its AABB bottom rests on the
    /// highest top of existing objects whose XY footprint overlaps it.
    double stacking_height(const TriangleMesh& mesh, const Pose& pose_at_origin) const;

    bool contains(std::string_view name) const { return index_of(name).has_value(); }
    const SceneObject& get(std::string_view name) const;
    const std::vector<SceneObject>& objects() const { return objects_; }
    bool empty() const { return objects_.empty(); }

    /// Union of all world AABBs (empty box for an empty scene).
    Aabb bounds() const;
    /// XY rectangle covering every footprint, scaled by 1.2 about its
    /// center; a 4 x 4 m square at the origin for an empty scene. z is 0.
    Aabb floor_extent() const;

    const std::optional<TextureImage>& floor_texture() const { return floor_texture_; }
    void set_floor_texture(TextureImage texture) { floor_texture_ = std::move(texture); }

    /// Inserts an already-posed object verbatim (deserialization path).
    void restore_object(SceneObject object);

private:
    std::optional<std::size_t> index_of(std::string_view name) const;
    SceneObject& mutable_get(std::string_view name);

    std::vector<SceneObject> objects_;
    std::optional<TextureImage> floor_texture_;
};

/// Prompt-facing JSON document: per object name, position, rotation,
/// scale and size rounded to 3 decimals, in insertion order.
std::string scene_summary(const Scene& scene);

/// Rounds to 3 decimals, folding -0 into 0.
double round3(double v);

}  // namespace sceneloom
