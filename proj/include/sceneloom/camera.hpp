#pragma once

#include <optional>
#include <string_view>

#include "sceneloom/vec.hpp"

namespace sceneloom {

class Scene;

enum class ViewPreset { Top, Front, Side, Iso };
enum class MoveDirection { Forward, Backward, Left, Right, Up, Down };

/// Case-insensitive. Throw BadView / BadDirection.
ViewPreset parse_view(std::string_view text);
MoveDirection parse_direction(std::string_view text);
std::string_view to_string(ViewPreset view);
std::string_view to_string(MoveDirection dir);

inline constexpr double kDefaultFov = 50.0;
inline constexpr double kMaxOrbitElevation = 89.0;
inline constexpr double kMinCameraDistance = 0.05;

/// Orbit camera: the eye sits `distance` meters from `target` along the
/// direction given by azimuth (0 = -Y side, 90 = +X side) and elevation.
/// Elevation is exactly 90 only for the Top preset, which uses +Y-ish up.
struct CameraState {
    Vec3 target{};
    double azimuth = 45.0;
    double elevation = 30.0;
    double distance = 5.0;
    double fov = kDefaultFov;

    friend bool operator==(const CameraState&, const CameraState&) = default;
};

/// Orthonormal camera frame in world coordinates.
struct CameraBasis {
    Vec3 eye;
    Vec3 forward;
    Vec3 right;
    Vec3 up;
};

CameraBasis camera_basis(const CameraState& cam);

/// Resets to a preset framing every object. Distance is
/// zoom * max(r / tan(fov/2), fit) where r is the bounding-sphere radius
/// over all world AABB corners and `fit` is the smallest distance keeping
/// every corner inside the frustum. Throws BadZoom.
CameraState view_scene(const Scene& scene, ViewPreset view = ViewPreset::Iso, double zoom = 1.0);

/// Like view_scene over one object with the radius padded 1.5x. Throws
/// UnknownObject, BadZoom.
CameraState focus_on(const Scene& scene, std::string_view target, ViewPreset view = ViewPreset::Iso,
                     double zoom = 1.0);

/// Relative orbit; positive horizontal increases azimuth (rotate right),
/// elevation is clamped to [-89, 89].
CameraState rotate_camera(const CameraState& cam, double horizontal_deg, double vertical_deg);

/// Forward/Backward dolly toward/away from the target (floor 0.05 m);
/// Left/Right/Up/Down pan the target along the camera's right/up axes.
/// Throws BadDirection for negative distances.
CameraState move_camera(const CameraState& cam, MoveDirection dir, double distance);

struct ScreenPoint {
    double x;      // pixels from the left edge
    double y;      // pixels from the top edge
    double depth;  // view-space distance along the forward axis
};

/// Perspective projection; nullopt when the point is at or behind the eye.
std::optional<ScreenPoint> project(const CameraState& cam, const Vec3& point, int viewport_w, int viewport_h);

}  // namespace sceneloom
