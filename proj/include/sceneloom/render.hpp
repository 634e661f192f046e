#pragma once

#include <array>
#include <string>
#include <vector>

#include "sceneloom/camera.hpp"
#include "sceneloom/image.hpp"

namespace sceneloom {

class Scene;

struct RenderOptions {
    int width = 1024;
    int height = 768;
    /// Name labels and the axis HUD.
    bool visual_prompting = true;
    bool draw_floor = true;
    Rgba background{70, 78, 90, 255};
};

/// Inclusive-exclusive pixel rectangle.
struct PixelRect {
    int x0 = 0, y0 = 0, x1 = 0, y1 = 0;
    bool contains(int x, int y) const { return x >= x0 && x < x1 && y >= y0 && y < y1; }
};

/// Deterministic per-name base colour.
Rgba object_color(std::string_view name);

/// Z-buffered flat-shaded rasterization of floor and objects, no overlays.
Image rasterize(const Scene& scene, const CameraState& cam, const RenderOptions& opts);

/// rasterize() plus overlays when opts.visual_prompting is set. Throws
/// BadConfig when width or height is below 64.
Image render(const Scene& scene, const CameraState& cam, const RenderOptions& opts = {});

struct LabelPlacement {
    std::string name;
    double anchor_x = 0.0;  // projected AABB top-center
    double anchor_y = 0.0;
    PixelRect box;          // clipped to the image
};

/// Labels for every object whose AABB center projects on-screen, in scene
/// order. Pure layout; nothing is drawn.
std::vector<LabelPlacement> layout_labels(const Scene& scene, const CameraState& cam, int width, int height);

/// Draws the labels from layout_labels and returns them.
std::vector<LabelPlacement> overlay_labels(Image& image, const Scene& scene, const CameraState& cam);

struct HudAxis {
    char letter;
    Rgba color;
    double dx, dy;  // screen direction (y down), length <= 1
    bool is_point;  // axis points along the view direction
};

struct HudGeometry {
    double center_x = 0.0, center_y = 0.0;
    double axis_length_px = 0.0;
    std::array<HudAxis, 3> axes{};
    PixelRect region;
};

HudGeometry axis_hud_geometry(const CameraState& cam, int width, int height);

/// World X/Y/Z unit axes rotated by the camera orientation, drawn in the
/// top-right corner (X red, Y green, Z blue).
HudGeometry overlay_axis_hud(Image& image, const CameraState& cam);

/// Bitmap text, 8x8 glyphs scaled by `scale`, top-left at (x, y).
void draw_text(Image& image, int x, int y, std::string_view text, Rgba color, int scale = 2);

inline constexpr int kGlyphSize = 8;
inline constexpr int kLabelTextScale = 2;

}  // namespace sceneloom
