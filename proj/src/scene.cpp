#include "sceneloom/scene.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include <fmt/format.h>
#include <json.hpp>

#include "sceneloom/error.hpp"

namespace sceneloom {

Axis parse_axis(std::string_view text)
{
    if (text.size() == 1) {
        switch (std::toupper(static_cast<unsigned char>(text[0]))) {
        case 'X': return Axis::X;
        case 'Y': return Axis::Y;
        case 'Z': return Axis::Z;
        default: break;
        }
    }
    throw Error(ErrorCode::BadAxis, fmt::format("'{}' is not one of X, Y, Z", text));
}

std::string_view to_string(Axis axis)
{
    switch (axis) {
    case Axis::X: return "X";
    case Axis::Y: return "Y";
    case Axis::Z: return "Z";
    }
    return "?";
}

Vec3 SceneObject::size() const
{
    return hadamard(mesh->bounds().extent(), pose.scale);
}

std::optional<std::size_t> Scene::index_of(std::string_view name) const
{
    for (std::size_t i = 0; i < objects_.size(); ++i)
        if (objects_[i].name == name)
            return i;
    return std::nullopt;
}

const SceneObject& Scene::get(std::string_view name) const
{
    if (auto i = index_of(name))
        return objects_[*i];
    throw Error(ErrorCode::UnknownObject, fmt::format("no object named '{}'", name));
}

SceneObject& Scene::mutable_get(std::string_view name)
{
    return const_cast<SceneObject&>(get(name));
}

double Scene::stacking_height(const TriangleMesh& mesh, const Pose& pose_at_origin) const
{
    Pose pose = pose_at_origin;
    pose.position = {0.0, 0.0, 0.0};
    const Aabb footprint = world_aabb(mesh, pose);

    double top = 0.0;
    for (const auto& obj : objects_) {
        const Aabb b = obj.world_bounds();
        // Strict XY overlap: footprints that only share an edge do not stack.
        const bool overlap = footprint.min.x < b.max.x && b.min.x < footprint.max.x &&
                             footprint.min.y < b.max.y && b.min.y < footprint.max.y;
        if (overlap)
            top = std::max(top, b.max.z);
    }
    return top - footprint.min.z;
}

const SceneObject& Scene::add_object(const std::string& name, const TriangleMesh& mesh)
{
    if (name.empty())
        throw Error(ErrorCode::UnknownObject, "object name must not be empty");
    if (contains(name))
        throw Error(ErrorCode::DuplicateName, fmt::format("an object named '{}' already exists", name));
    validate_mesh(mesh);

    SceneObject obj;
    obj.name = name;
    auto centered = std::make_shared<TriangleMesh>(recenter(mesh));
    obj.bvh = std::make_shared<const Bvh>(Bvh::build(*centered));
    obj.mesh = std::move(centered);
    obj.pose.position.z = stacking_height(*obj.mesh, obj.pose);
    objects_.push_back(std::move(obj));
    auto_lift(name);
    return objects_.back();
}

void Scene::restore_object(SceneObject object)
{
    if (contains(object.name))
        throw Error(ErrorCode::DuplicateName, fmt::format("an object named '{}' already exists", object.name));
    if (!object.bvh)
        object.bvh = std::make_shared<const Bvh>(Bvh::build(*object.mesh));
    objects_.push_back(std::move(object));
}

void Scene::place(std::string_view name, const Vec3& position)
{
    if (!is_finite(position))
        throw Error(ErrorCode::NonFinite, "position must be finite");
    mutable_get(name).pose.position = position;
    auto_lift(name);
}

void Scene::translate(std::string_view name, Axis axis, double distance)
{
    if (!std::isfinite(distance))
        throw Error(ErrorCode::NonFinite, "distance must be finite");
    mutable_get(name).pose.position[static_cast<int>(axis)] += distance;
    auto_lift(name);
}

void Scene::rotate(std::string_view name, Axis axis, double angle_degrees)
{
    if (!std::isfinite(angle_degrees))
        throw Error(ErrorCode::NonFinite, "angle must be finite");
    mutable_get(name).pose.rotation_deg[static_cast<int>(axis)] = normalize_degrees(angle_degrees);
    auto_lift(name);
}

void Scene::set_scale(std::string_view name, double uniform)
{
    set_scale(name, Vec3{uniform, uniform, uniform});
}

void Scene::set_scale(std::string_view name, const Vec3& scale)
{
    if (!is_finite(scale))
        throw Error(ErrorCode::NonFinite, "scale must be finite");
    if (!(scale.x > 0.0 && scale.y > 0.0 && scale.z > 0.0))
        throw Error(ErrorCode::NonPositiveScale, "scale components must be > 0");
    mutable_get(name).pose.scale = scale;
    auto_lift(name);
}

std::vector<std::string> Scene::duplicate(std::string_view name, int count)
{
    if (count < 1)
        throw Error(ErrorCode::BadCount, fmt::format("count must be >= 1, got {}", count));
    const SceneObject source = get(name);
    std::vector<std::string> created;
    int suffix = 2;
    for (int i = 0; i < count; ++i) {
        std::string copy_name;
        do {
            copy_name = fmt::format("{}_{}", source.name, suffix++);
        } while (contains(copy_name));

        SceneObject copy = source;
        copy.name = copy_name;
        copy.pose.position = {0.0, 0.0, 0.0};
        copy.pose.position.z = stacking_height(*copy.mesh, copy.pose);
        objects_.push_back(std::move(copy));
        auto_lift(copy_name);
        created.push_back(copy_name);
    }
    return created;
}

void Scene::remove(std::string_view name)
{
    const auto i = index_of(name);
    if (!i)
        throw Error(ErrorCode::UnknownObject, fmt::format("no object named '{}'", name));
    objects_.erase(objects_.begin() + static_cast<std::ptrdiff_t>(*i));
}

void Scene::auto_lift(std::string_view name)
{
    SceneObject& obj = mutable_get(name);
    // A lifted bottom can land a few ulps below zero; lifting again would
    // make repeated identical edits drift.
    const double bottom = obj.world_bounds().min.z;
    if (bottom < -1e-12)
        obj.pose.position.z -= bottom;
}

Aabb Scene::bounds() const
{
    Aabb box = Aabb::empty();
    for (const auto& obj : objects_)
        box.expand(obj.world_bounds());
    return box;
}

Aabb Scene::floor_extent() const
{
    if (objects_.empty())
        return {{-2.0, -2.0, 0.0}, {2.0, 2.0, 0.0}};
    const Aabb b = bounds();
    const double cx = 0.5 * (b.min.x + b.max.x), cy = 0.5 * (b.min.y + b.max.y);
    const double hx = 0.6 * (b.max.x - b.min.x), hy = 0.6 * (b.max.y - b.min.y);
    return {{cx - hx, cy - hy, 0.0}, {cx + hx, cy + hy, 0.0}};
}

double round3(double v)
{
    const double r = std::round(v * 1000.0) / 1000.0;
    return r == 0.0 ? 0.0 : r;
}

std::string scene_summary(const Scene& scene)
{
    auto triple = [](const Vec3& v) { return nlohmann::ordered_json::array({round3(v.x), round3(v.y), round3(v.z)}); };
    auto objects = nlohmann::ordered_json::array();
    for (const auto& obj : scene.objects()) {
        objects.push_back(nlohmann::ordered_json{
            {"name", obj.name},
            {"position", triple(obj.pose.position)},
            {"rotation", triple(obj.pose.rotation_deg)},
            {"scale", triple(obj.pose.scale)},
            {"size", triple(obj.size())},
        });
    }
    nlohmann::ordered_json doc;
    doc["objects"] = objects;
    return doc.dump(2);
}

}  // namespace sceneloom
