#include "sceneloom/render.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "font8x8.hpp"
#include "sceneloom/error.hpp"
#include "sceneloom/hash.hpp"
#include "sceneloom/scene.hpp"

namespace sceneloom {
namespace {

constexpr double kNearPlane = 0.01;
constexpr Rgba kLabelBox{15, 15, 20, 190};
constexpr Rgba kLabelText{255, 255, 255, 255};
constexpr int kLabelPadding = 3;
constexpr int kHudRadius = 62;

struct ViewVertex {
    double x, y, z;  // camera space: right, up, forward
};

struct Frame {
    CameraBasis basis;
    double tan_half_fov;
    double aspect;
    int width, height;

    ViewVertex to_view(const Vec3& p) const
    {
        const Vec3 rel = p - basis.eye;
        return {dot(basis.right, rel), dot(basis.up, rel), dot(basis.forward, rel)};
    }
    double screen_x(const ViewVertex& v) const { return (v.x / (v.z * tan_half_fov * aspect) + 1.0) * 0.5 * width; }
    double screen_y(const ViewVertex& v) const { return (1.0 - v.y / (v.z * tan_half_fov)) * 0.5 * height; }
};

Rgba shade(Rgba base, double intensity)
{
    auto s = [&](std::uint8_t c) { return static_cast<std::uint8_t>(std::clamp(std::lround(c * intensity), 0L, 255L)); };
    return {s(base.r), s(base.g), s(base.b), 255};
}

// Polygon clipped against z >= near (Sutherland-Hodgman, single plane).
std::vector<ViewVertex> clip_near(const std::array<ViewVertex, 3>& tri)
{
    std::vector<ViewVertex> out;
    for (std::size_t i = 0; i < 3; ++i) {
        const auto& a = tri[i];
        const auto& b = tri[(i + 1) % 3];
        const bool ina = a.z >= kNearPlane, inb = b.z >= kNearPlane;
        if (ina)
            out.push_back(a);
        if (ina != inb) {
            const double t = (kNearPlane - a.z) / (b.z - a.z);
            out.push_back({a.x + t * (b.x - a.x), a.y + t * (b.y - a.y), kNearPlane});
        }
    }
    return out;
}

void raster_triangle(Image& img, std::vector<double>& inv_depth, const Frame& f, const ViewVertex& a,
                     const ViewVertex& b, const ViewVertex& c, Rgba color)
{
    const double ax = f.screen_x(a), ay = f.screen_y(a);
    double bx = f.screen_x(b), by = f.screen_y(b);
    double cx = f.screen_x(c), cy = f.screen_y(c);
    double bw = 1.0 / b.z, cw = 1.0 / c.z;
    const double aw = 1.0 / a.z;
    double area = (bx - ax) * (cy - ay) - (by - ay) * (cx - ax);
    if (area == 0.0 || !std::isfinite(area))
        return;
    if (area < 0.0) {
        std::swap(bx, cx);
        std::swap(by, cy);
        std::swap(bw, cw);
        area = -area;
    }
    const int x0 = std::max(0, static_cast<int>(std::floor(std::min({ax, bx, cx}))));
    const int x1 = std::min(img.width() - 1, static_cast<int>(std::ceil(std::max({ax, bx, cx}))));
    const int y0 = std::max(0, static_cast<int>(std::floor(std::min({ay, by, cy}))));
    const int y1 = std::min(img.height() - 1, static_cast<int>(std::ceil(std::max({ay, by, cy}))));
    for (int y = y0; y <= y1; ++y) {
        const double py = y + 0.5;
        for (int x = x0; x <= x1; ++x) {
            const double px = x + 0.5;
            const double w0 = (bx - px) * (cy - py) - (by - py) * (cx - px);
            const double w1 = (cx - px) * (ay - py) - (cy - py) * (ax - px);
            const double w2 = (ax - px) * (by - py) - (ay - py) * (bx - px);
            if (w0 < 0.0 || w1 < 0.0 || w2 < 0.0)
                continue;
            const double iz = (w0 * aw + w1 * bw + w2 * cw) / area;
            auto& slot = inv_depth[static_cast<std::size_t>(y) * img.width() + x];
            if (iz > slot) {
                slot = iz;
                img.set(x, y, color);
            }
        }
    }
}

Rgba floor_color(const Scene& scene, const Aabb& extent, double x, double y)
{
    if (const auto& tex = scene.floor_texture()) {
        const auto& im = tex->image;
        const double u = (x - extent.min.x) / tex->tile_size_m;
        const double v = (y - extent.min.y) / tex->tile_size_m;
        const double fu = u - std::floor(u), fv = v - std::floor(v);
        const int tx = std::min(im.width() - 1, static_cast<int>(fu * im.width()));
        const int ty = std::min(im.height() - 1, static_cast<int>((1.0 - fv) * im.height()));
        return im.at(tx, std::max(0, ty));
    }
    constexpr double kChecker = 0.5;
    const long cx = static_cast<long>(std::floor(x / kChecker));
    const long cy = static_cast<long>(std::floor(y / kChecker));
    return ((cx + cy) & 1) ? Rgba{200, 200, 200, 255} : Rgba{225, 225, 225, 255};
}

void draw_floor(Image& img, std::vector<double>& inv_depth, const Frame& f, const Scene& scene)
{
    const Aabb extent = scene.floor_extent();
    for (int y = 0; y < img.height(); ++y) {
        const double ndc_y = 1.0 - 2.0 * (y + 0.5) / img.height();
        for (int x = 0; x < img.width(); ++x) {
            const double ndc_x = 2.0 * (x + 0.5) / img.width() - 1.0;
            const Vec3 dir = f.basis.forward + f.basis.right * (ndc_x * f.tan_half_fov * f.aspect) +
                             f.basis.up * (ndc_y * f.tan_half_fov);
            if (dir.z == 0.0)
                continue;
            // dir has unit forward component, so s is the view depth.
            const double s = -f.basis.eye.z / dir.z;
            if (!(s > kNearPlane))
                continue;
            const Vec3 hit = f.basis.eye + dir * s;
            if (hit.x < extent.min.x || hit.x > extent.max.x || hit.y < extent.min.y || hit.y > extent.max.y)
                continue;
            // Slightly farther than true depth so faces lying on the floor win.
            inv_depth[static_cast<std::size_t>(y) * img.width() + x] = 1.0 / (s * (1.0 + 1e-6));
            img.set(x, y, floor_color(scene, extent, hit.x, hit.y));
        }
    }
}

void fill_rect(Image& img, const PixelRect& r, Rgba c)
{
    for (int y = std::max(0, r.y0); y < std::min(img.height(), r.y1); ++y)
        for (int x = std::max(0, r.x0); x < std::min(img.width(), r.x1); ++x)
            img.blend(x, y, c);
}

void fill_disc(Image& img, double cx, double cy, double radius, Rgba c)
{
    for (int y = static_cast<int>(cy - radius) - 1; y <= static_cast<int>(cy + radius) + 1; ++y)
        for (int x = static_cast<int>(cx - radius) - 1; x <= static_cast<int>(cx + radius) + 1; ++x) {
            const double dx = x + 0.5 - cx, dy = y + 0.5 - cy;
            if (img.contains(x, y) && dx * dx + dy * dy <= radius * radius)
                img.blend(x, y, c);
        }
}

void draw_thick_line(Image& img, double x0, double y0, double x1, double y1, double half_width, Rgba c)
{
    const double len = std::hypot(x1 - x0, y1 - y0);
    const int steps = std::max(1, static_cast<int>(std::ceil(len * 2.0)));
    for (int i = 0; i <= steps; ++i) {
        const double t = static_cast<double>(i) / steps;
        const double px = x0 + t * (x1 - x0), py = y0 + t * (y1 - y0);
        for (int y = static_cast<int>(std::floor(py - half_width)); y <= static_cast<int>(std::ceil(py + half_width)); ++y)
            for (int x = static_cast<int>(std::floor(px - half_width)); x <= static_cast<int>(std::ceil(px + half_width)); ++x) {
                const double dx = x + 0.5 - px, dy = y + 0.5 - py;
                if (img.contains(x, y) && dx * dx + dy * dy <= half_width * half_width)
                    img.set(x, y, c);
            }
    }
}

}  // namespace

Rgba object_color(std::string_view name)
{
    const std::uint64_t h = fnv1a64(name);
    // Keep channels in a mid range so flat shading stays legible.
    auto ch = [&](int shift) { return static_cast<std::uint8_t>(70 + ((h >> shift) & 0xff) * 150 / 255); };
    return {ch(0), ch(16), ch(32), 255};
}

Image rasterize(const Scene& scene, const CameraState& cam, const RenderOptions& opts)
{
    Image img(opts.width, opts.height, opts.background);
    std::vector<double> inv_depth(static_cast<std::size_t>(opts.width) * opts.height, 0.0);
    const Frame f{camera_basis(cam), std::tan(deg_to_rad(cam.fov * 0.5)),
                  static_cast<double>(opts.width) / opts.height, opts.width, opts.height};

    if (opts.draw_floor)
        draw_floor(img, inv_depth, f, scene);

    const Vec3 light = normalized(normalized(f.basis.eye - cam.target) + Vec3{0.0, 0.0, 1.0});
    for (const auto& obj : scene.objects()) {
        const Rgba base = object_color(obj.name);
        const auto world = transform_vertices(*obj.mesh, WorldTransform(obj.pose));
        for (const auto& t : obj.mesh->triangles) {
            const Vec3 &p0 = world[t[0]], &p1 = world[t[1]], &p2 = world[t[2]];
            const Vec3 n = normalized(cross(p1 - p0, p2 - p0));
            const Rgba color = shade(base, 0.35 + 0.65 * std::abs(dot(n, light)));
            const auto poly = clip_near({f.to_view(p0), f.to_view(p1), f.to_view(p2)});
            for (std::size_t k = 1; k + 1 < poly.size(); ++k)
                raster_triangle(img, inv_depth, f, poly[0], poly[k], poly[k + 1], color);
        }
    }
    return img;
}

Image render(const Scene& scene, const CameraState& cam, const RenderOptions& opts)
{
    if (opts.width < 64 || opts.height < 64)
        throw Error(ErrorCode::BadConfig, "render size must be at least 64 x 64");
    Image img = rasterize(scene, cam, opts);
    if (opts.visual_prompting) {
        overlay_labels(img, scene, cam);
        overlay_axis_hud(img, cam);
    }
    return img;
}

void draw_text(Image& image, int x, int y, std::string_view text, Rgba color, int scale)
{
    int pen = x;
    for (char ch : text) {
        const unsigned char c = static_cast<unsigned char>(ch);
        const auto& glyph = detail::kFont8x8[(c >= 0x20 && c < 0x7f) ? c - 0x20 : '?' - 0x20];
        for (int row = 0; row < kGlyphSize; ++row)
            for (int col = 0; col < kGlyphSize; ++col) {
                if (!(glyph[row] & (0x80 >> col)))
                    continue;
                for (int sy = 0; sy < scale; ++sy)
                    for (int sx = 0; sx < scale; ++sx) {
                        const int px = pen + col * scale + sx, py = y + row * scale + sy;
                        if (image.contains(px, py))
                            image.set(px, py, color);
                    }
            }
        pen += kGlyphSize * scale;
    }
}

std::vector<LabelPlacement> layout_labels(const Scene& scene, const CameraState& cam, int width, int height)
{
    std::vector<LabelPlacement> out;
    for (const auto& obj : scene.objects()) {
        const Aabb box = obj.world_bounds();
        const auto center = project(cam, box.center(), width, height);
        if (!center || center->x < 0.0 || center->x >= width || center->y < 0.0 || center->y >= height)
            continue;
        const Vec3 top{0.5 * (box.min.x + box.max.x), 0.5 * (box.min.y + box.max.y), box.max.z};
        const auto anchor = project(cam, top, width, height);
        if (!anchor)
            continue;

        const int text_w = static_cast<int>(obj.name.size()) * kGlyphSize * kLabelTextScale;
        const int box_w = text_w + 2 * kLabelPadding;
        const int box_h = kGlyphSize * kLabelTextScale + 2 * kLabelPadding;
        const int ax = static_cast<int>(std::lround(anchor->x));
        const int ay = static_cast<int>(std::lround(anchor->y));
        PixelRect r{ax - box_w / 2, ay - box_h - 2, ax - box_w / 2 + box_w, ay - 2};
        r.x0 = std::clamp(r.x0, 0, width);
        r.x1 = std::clamp(r.x1, 0, width);
        r.y0 = std::clamp(r.y0, 0, height);
        r.y1 = std::clamp(r.y1, 0, height);
        out.push_back({obj.name, anchor->x, anchor->y, r});
    }
    return out;
}

std::vector<LabelPlacement> overlay_labels(Image& image, const Scene& scene, const CameraState& cam)
{
    auto labels = layout_labels(scene, cam, image.width(), image.height());
    for (const auto& label : labels) {
        const int text_w = static_cast<int>(label.name.size()) * kGlyphSize * kLabelTextScale;
        const int box_h = kGlyphSize * kLabelTextScale + 2 * kLabelPadding;
        const int ax = static_cast<int>(std::lround(label.anchor_x));
        const int ay = static_cast<int>(std::lround(label.anchor_y));
        const int x0 = ax - (text_w + 2 * kLabelPadding) / 2;
        const int y0 = ay - box_h - 2;
        fill_rect(image, label.box, kLabelBox);
        // Text is clipped to the box so nothing is drawn outside it.
        Image text_layer = image;
        draw_text(text_layer, x0 + kLabelPadding, y0 + kLabelPadding, label.name, kLabelText, kLabelTextScale);
        for (int y = label.box.y0; y < label.box.y1; ++y)
            for (int x = label.box.x0; x < label.box.x1; ++x)
                image.set(x, y, text_layer.at(x, y));
    }
    return labels;
}

HudGeometry axis_hud_geometry(const CameraState& cam, int width, int height)
{
    (void)height;
    HudGeometry g;
    g.center_x = width - kHudRadius - 8.0;
    g.center_y = kHudRadius + 8.0;
    g.axis_length_px = kHudRadius - 22.0;
    g.region = {width - 2 * kHudRadius - 16, 0, width, 2 * kHudRadius + 16};
    const CameraBasis b = camera_basis(cam);
    const std::array<Vec3, 3> units{Vec3{1, 0, 0}, Vec3{0, 1, 0}, Vec3{0, 0, 1}};
    const std::array<Rgba, 3> colors{Rgba{230, 60, 60, 255}, Rgba{70, 200, 70, 255}, Rgba{80, 120, 240, 255}};
    const char letters[3] = {'X', 'Y', 'Z'};
    for (int i = 0; i < 3; ++i) {
        const double dx = dot(b.right, units[i]);
        const double dy = -dot(b.up, units[i]);
        g.axes[i] = {letters[i], colors[i], dx, dy, std::hypot(dx, dy) < 0.05};
    }
    return g;
}

HudGeometry overlay_axis_hud(Image& image, const CameraState& cam)
{
    const HudGeometry g = axis_hud_geometry(cam, image.width(), image.height());
    fill_disc(image, g.center_x, g.center_y, kHudRadius, Rgba{15, 15, 20, 150});

    // Axes pointing away from the viewer are drawn first.
    const CameraBasis b = camera_basis(cam);
    std::array<int, 3> order{0, 1, 2};
    std::stable_sort(order.begin(), order.end(), [&](int l, int r) {
        return b.forward[l] > b.forward[r];
    });
    for (int i : order) {
        const auto& a = g.axes[i];
        if (a.is_point) {
            fill_disc(image, g.center_x, g.center_y, 5.0, a.color);
        } else {
            const double tx = g.center_x + a.dx * g.axis_length_px;
            const double ty = g.center_y + a.dy * g.axis_length_px;
            draw_thick_line(image, g.center_x, g.center_y, tx, ty, 1.5, a.color);
            fill_disc(image, tx, ty, 3.5, a.color);
        }
        const double len = std::max(std::hypot(a.dx, a.dy), 1e-9);
        const double lx = a.is_point ? g.center_x + 10.0 : g.center_x + a.dx / len * (g.axis_length_px + 12.0);
        const double ly = a.is_point ? g.center_y - 10.0 : g.center_y + a.dy / len * (g.axis_length_px + 12.0);
        draw_text(image, static_cast<int>(std::lround(lx)) - 4, static_cast<int>(std::lround(ly)) - 4,
                  std::string(1, a.letter), a.color, 1);
    }
    return g;
}

}  // namespace sceneloom
