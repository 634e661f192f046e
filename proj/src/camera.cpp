#include "sceneloom/camera.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "sceneloom/error.hpp"
#include "sceneloom/scene.hpp"

namespace sceneloom {
namespace {

std::string lower(std::string_view s)
{
    std::string out(s);
    for (auto& c : out)
        c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

// Fraction of the half-frustum a framed corner may occupy.
constexpr double kFramingSlack = 0.98;
constexpr double kMinFramingDistance = 0.5;

struct PresetAngles {
    double azimuth;
    double elevation;
};

PresetAngles preset_angles(ViewPreset view)
{
    switch (view) {
    case ViewPreset::Front: return {0.0, 15.0};
    case ViewPreset::Side: return {90.0, 15.0};
    case ViewPreset::Top: return {0.0, 90.0};
    case ViewPreset::Iso: return {45.0, 30.0};
    }
    return {45.0, 30.0};
}

std::array<Vec3, 8> corners(const Aabb& b)
{
    std::array<Vec3, 8> out;
    for (int i = 0; i < 8; ++i)
        out[i] = {(i & 1) ? b.max.x : b.min.x, (i & 2) ? b.max.y : b.min.y, (i & 4) ? b.max.z : b.min.z};
    return out;
}

/// Smallest eye distance that keeps every point inside a square frustum of
/// half-angle fov/2 around the camera axis.
double fit_distance(const CameraState& oriented, const std::vector<Vec3>& points)
{
    const CameraBasis basis = camera_basis(oriented);
    const double k = kFramingSlack * std::tan(deg_to_rad(oriented.fov * 0.5));
    double fit = 0.0;
    for (const auto& p : points) {
        const Vec3 rel = p - oriented.target;
        const double depth0 = dot(basis.forward, rel);
        const double lateral = std::max(std::abs(dot(basis.right, rel)), std::abs(dot(basis.up, rel)));
        fit = std::max({fit, lateral / k - depth0, kMinCameraDistance - depth0});
    }
    return fit;
}

CameraState frame_points(const std::vector<Vec3>& points, const Vec3& center, ViewPreset view, double zoom,
                         double padding)
{
    if (!(zoom > 0.0) || !std::isfinite(zoom))
        throw Error(ErrorCode::BadZoom, fmt::format("zoom must be > 0, got {}", zoom));

    CameraState cam;
    const auto angles = preset_angles(view);
    cam.azimuth = angles.azimuth;
    cam.elevation = angles.elevation;
    cam.target = center;

    double radius = 0.0;
    for (const auto& p : points)
        radius = std::max(radius, norm(p - center));
    const bool degenerate = radius < 1e-9;
    if (degenerate)
        radius = 1.0;

    const double base = std::max(radius / std::tan(deg_to_rad(cam.fov * 0.5)), fit_distance(cam, points));
    cam.distance = zoom * padding * base;
    if (degenerate)
        cam.distance = std::max(cam.distance, kMinFramingDistance);
    return cam;
}

}  // namespace

ViewPreset parse_view(std::string_view text)
{
    const auto s = lower(text);
    if (s == "top") return ViewPreset::Top;
    if (s == "front") return ViewPreset::Front;
    if (s == "side") return ViewPreset::Side;
    if (s == "iso") return ViewPreset::Iso;
    throw Error(ErrorCode::BadView, fmt::format("'{}' is not one of Top, Front, Side, Iso", text));
}

MoveDirection parse_direction(std::string_view text)
{
    const auto s = lower(text);
    if (s == "forward") return MoveDirection::Forward;
    if (s == "backward") return MoveDirection::Backward;
    if (s == "left") return MoveDirection::Left;
    if (s == "right") return MoveDirection::Right;
    if (s == "up") return MoveDirection::Up;
    if (s == "down") return MoveDirection::Down;
    throw Error(ErrorCode::BadDirection,
                fmt::format("'{}' is not one of Forward, Backward, Left, Right, Up, Down", text));
}

std::string_view to_string(ViewPreset view)
{
    switch (view) {
    case ViewPreset::Top: return "Top";
    case ViewPreset::Front: return "Front";
    case ViewPreset::Side: return "Side";
    case ViewPreset::Iso: return "Iso";
    }
    return "?";
}

std::string_view to_string(MoveDirection dir)
{
    switch (dir) {
    case MoveDirection::Forward: return "Forward";
    case MoveDirection::Backward: return "Backward";
    case MoveDirection::Left: return "Left";
    case MoveDirection::Right: return "Right";
    case MoveDirection::Up: return "Up";
    case MoveDirection::Down: return "Down";
    }
    return "?";
}

CameraBasis camera_basis(const CameraState& cam)
{
    const double az = deg_to_rad(cam.azimuth);
    const double el = deg_to_rad(cam.elevation);
    const Vec3 offset{std::sin(az) * std::cos(el), -std::cos(az) * std::cos(el), std::sin(el)};

    CameraBasis b;
    b.eye = cam.target + offset * cam.distance;
    b.forward = normalized(-offset);
    const Vec3 up_hint = cam.elevation >= 90.0 ? Vec3{-std::sin(az), std::cos(az), 0.0} : Vec3{0.0, 0.0, 1.0};
    b.right = normalized(cross(b.forward, up_hint));
    b.up = cross(b.right, b.forward);
    return b;
}

CameraState view_scene(const Scene& scene, ViewPreset view, double zoom)
{
    std::vector<Vec3> points;
    for (const auto& obj : scene.objects())
        for (const auto& c : corners(obj.world_bounds()))
            points.push_back(c);
    const Vec3 center = scene.empty() ? Vec3{} : scene.bounds().center();
    return frame_points(points, center, view, zoom, 1.0);
}

CameraState focus_on(const Scene& scene, std::string_view target, ViewPreset view, double zoom)
{
    const Aabb box = scene.get(target).world_bounds();
    const auto c = corners(box);
    return frame_points({c.begin(), c.end()}, box.center(), view, zoom, 1.5);
}

CameraState rotate_camera(const CameraState& cam, double horizontal_deg, double vertical_deg)
{
    CameraState out = cam;
    out.azimuth = cam.azimuth + horizontal_deg;
    if (!(cam.elevation >= 90.0 && vertical_deg == 0.0))
        out.elevation = std::clamp(cam.elevation + vertical_deg, -kMaxOrbitElevation, kMaxOrbitElevation);
    return out;
}

CameraState move_camera(const CameraState& cam, MoveDirection dir, double distance)
{
    if (!(distance >= 0.0) || !std::isfinite(distance))
        throw Error(ErrorCode::BadDirection, fmt::format("move distance must be >= 0, got {}", distance));
    CameraState out = cam;
    const CameraBasis b = camera_basis(cam);
    switch (dir) {
    case MoveDirection::Forward: out.distance = std::max(cam.distance - distance, kMinCameraDistance); break;
    case MoveDirection::Backward: out.distance = cam.distance + distance; break;
    case MoveDirection::Left: out.target = cam.target - b.right * distance; break;
    case MoveDirection::Right: out.target = cam.target + b.right * distance; break;
    case MoveDirection::Up: out.target = cam.target + b.up * distance; break;
    case MoveDirection::Down: out.target = cam.target - b.up * distance; break;
    }
    return out;
}

std::optional<ScreenPoint> project(const CameraState& cam, const Vec3& point, int viewport_w, int viewport_h)
{
    const CameraBasis b = camera_basis(cam);
    const Vec3 rel = point - b.eye;
    const double depth = dot(b.forward, rel);
    if (!(depth > 1e-12))
        return std::nullopt;
    const double t = std::tan(deg_to_rad(cam.fov * 0.5));
    const double aspect = static_cast<double>(viewport_w) / viewport_h;
    const double ndc_x = dot(b.right, rel) / (depth * t * aspect);
    const double ndc_y = dot(b.up, rel) / (depth * t);
    return ScreenPoint{(ndc_x + 1.0) * 0.5 * viewport_w, (1.0 - ndc_y) * 0.5 * viewport_h, depth};
}

}  // namespace sceneloom
