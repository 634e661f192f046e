#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "sceneloom/camera.hpp"
#include "sceneloom/error.hpp"
#include "sceneloom/image.hpp"
#include "sceneloom/render.hpp"
#include "sceneloom/scene.hpp"

using namespace sceneloom;

namespace {

TriangleMesh uv_sphere(int rings, int segments)
{
    TriangleMesh m;
    for (int r = 0; r <= rings; ++r) {
        const double th = M_PI * r / rings;
        for (int s = 0; s < segments; ++s) {
            const double ph = 2 * M_PI * s / segments;
            m.vertices.push_back({0.5 * std::sin(th) * std::cos(ph), 0.5 * std::sin(th) * std::sin(ph), 0.5 * std::cos(th)});
        }
    }
    for (int r = 0; r < rings; ++r)
        for (int s = 0; s < segments; ++s) {
            const auto a = static_cast<std::uint32_t>(r * segments + s);
            const auto b = static_cast<std::uint32_t>(r * segments + (s + 1) % segments);
            const auto c = a + segments, d = b + segments;
            m.triangles.push_back({a, c, b});
            m.triangles.push_back({b, c, d});
        }
    return remove_degenerate_triangles(m);
}

// Moller-Trumbore; returns the ray parameter or a negative value.
double ray_triangle(const Vec3& o, const Vec3& d, const Triangle& t)
{
    const Vec3 e1 = t[1] - t[0], e2 = t[2] - t[0];
    const Vec3 p = cross(d, e2);
    const double det = dot(e1, p);
    if (std::abs(det) < 1e-14)
        return -1;
    const Vec3 s = o - t[0];
    const double u = dot(s, p) / det;
    if (u < 0 || u > 1)
        return -1;
    const Vec3 q = cross(s, e1);
    const double v = dot(d, q) / det;
    if (v < 0 || u + v > 1)
        return -1;
    return dot(e2, q) / det;
}

// Name of the nearest object hit by the ray through (px, py), or "".
std::string cast(const Scene& scene, const CameraState& cam, double px, double py, int w, int h)
{
    const CameraBasis b = camera_basis(cam);
    const double t = std::tan(cam.fov * M_PI / 360.0), aspect = double(w) / h;
    const double nx = 2 * px / w - 1, ny = 1 - 2 * py / h;
    const Vec3 dir = b.forward + b.right * (nx * t * aspect) + b.up * (ny * t);
    std::string best;
    double best_t = 1e300;
    for (const auto& o : scene.objects()) {
        const auto world = transform_vertices(*o.mesh, WorldTransform(o.pose));
        for (const auto& tri : o.mesh->triangles) {
            const double s = ray_triangle(b.eye, dir, {world[tri[0]], world[tri[1]], world[tri[2]]});
            if (s > 0 && s < best_t) {
                best_t = s;
                best = o.name;
            }
        }
    }
    return best;
}

// Pixel is a shade (factor 0.35..1) of `base`, up to rounding.
bool is_shade_of(Rgba px, Rgba base)
{
    const double k = double(px.r + px.g + px.b) / (base.r + base.g + base.b);
    if (k < 0.34 || k > 1.01)
        return false;
    return std::abs(px.r - base.r * k) <= 2.0 && std::abs(px.g - base.g * k) <= 2.0 && std::abs(px.b - base.b * k) <= 2.0;
}

RenderOptions plain(int w = 320, int h = 240)
{
    RenderOptions o;
    o.width = w;
    o.height = h;
    o.visual_prompting = false;
    return o;
}

}  // namespace

TEST_CASE("render: empty scene is background, floor and HUD")
{
    const Scene s;
    const CameraState cam = view_scene(s);
    const Image img = render(s, cam);
    CHECK(img.width() == 1024);
    CHECK(img.height() == 768);
    CHECK(img.bytes().size() == 1024u * 768u * 4u);
    CHECK(img.at(0, 0) == RenderOptions{}.background);
    CHECK(img.at(512, 384) != RenderOptions{}.background);  // floor under the target

    const HudGeometry hud = axis_hud_geometry(cam, 1024, 768);
    const Image bare = rasterize(s, cam, RenderOptions{});
    int changed = 0;
    for (int y = 0; y < 768; ++y)
        for (int x = 0; x < 1024; ++x)
            if (img.at(x, y) != bare.at(x, y)) {
                ++changed;
                CHECK(hud.region.contains(x, y));
            }
    CHECK(changed > 100);
}

TEST_CASE("render: deterministic and size checked")
{
    std::mt19937_64 rng(5);
    const Scene s = oracle::random_scene(rng, 6, 40);
    const CameraState cam = view_scene(s, ViewPreset::Iso, 1.2);
    CHECK(render(s, cam) == render(s, cam));
    CHECK(encode_png(render(s, cam)) == encode_png(render(s, cam)));
    RenderOptions tiny;
    tiny.width = 32;
    CHECK_THROWS_AS(render(s, cam, tiny), Error);
}

TEST_CASE("render: occlusion agrees with a ray-cast oracle")
{
    Scene s;
    s.add_object("sphere", uv_sphere(16, 24));
    s.place("sphere", {0.5, 1.2, 0.9});
    s.add_object("box", make_box({1, 1, 1}));
    s.place("box", {0, -0.8, 0});
    const CameraState cam = view_scene(s, ViewPreset::Front);
    const int w = 320, h = 240;
    RenderOptions opts = plain(w, h);
    opts.draw_floor = false;
    const Image img = render(s, cam, opts);

    std::mt19937_64 rng(77);
    std::uniform_int_distribution<int> px(0, w - 1), py(0, h - 1);
    int checked = 0, sphere_hits = 0, box_hits = 0;
    while (checked < 50) {
        const int x = px(rng), y = py(rng);
        const std::string hit = cast(s, cam, x + 0.5, y + 0.5, w, h);
        // Skip pixels on silhouettes, where half a pixel changes the answer.
        bool stable = true;
        for (double dx : {-0.5, 0.5})
            for (double dy : {-0.5, 0.5})
                stable = stable && cast(s, cam, x + 0.5 + dx, y + 0.5 + dy, w, h) == hit;
        if (!stable || (hit.empty() && checked % 3 != 0))
            continue;
        ++checked;
        const Rgba got = img.at(x, y);
        if (hit.empty()) {
            CHECK(got == opts.background);
        } else {
            CHECK(is_shade_of(got, object_color(hit)));
            CHECK_FALSE(is_shade_of(got, object_color(hit == "box" ? "sphere" : "box")));
            (hit == "box" ? box_hits : sphere_hits)++;
        }
    }
    CHECK(box_hits > 0);
    CHECK(sphere_hits > 0);
}

TEST_CASE("labels: present at predicted anchors, one per on-screen object")
{
    Scene s;
    s.add_object("desk", make_box({1.5, 0.8, 0.7}));
    s.place("desk", {-1, 0, 0});
    s.add_object("lamp", make_box({0.3, 0.3, 1.2}));
    s.place("lamp", {1.2, 0.5, 0});
    const CameraState cam = view_scene(s, ViewPreset::Iso);
    const auto labels = layout_labels(s, cam, 1024, 768);
    REQUIRE(labels.size() == 2);
    for (const auto& l : labels) {
        const Aabb b = s.get(l.name).world_bounds();
        const auto want = oracle::matrix_project(cam.target, cam.azimuth, cam.elevation, cam.distance, cam.fov,
                                                 {b.center().x, b.center().y, b.max.z}, 1024, 768);
        REQUIRE(want);
        CHECK(l.anchor_x == doctest::Approx(want->x).epsilon(1e-9));
        CHECK(l.anchor_y == doctest::Approx(want->y).epsilon(1e-9));
        CHECK(l.box.y1 <= std::lround(l.anchor_y));
    }
    CHECK(labels[0].anchor_x != labels[1].anchor_x);

    // The label box holds white text on the dark box.
    Image img = rasterize(s, cam, RenderOptions{});
    overlay_labels(img, s, cam);
    for (const auto& l : labels) {
        int white = 0, dark = 0;
        for (int y = l.box.y0; y < l.box.y1; ++y)
            for (int x = l.box.x0; x < l.box.x1; ++x) {
                const Rgba c = img.at(x, y);
                white += c == Rgba{255, 255, 255, 255};
                dark += c.r < 90 && c.g < 90 && c.b < 90;
            }
        CHECK(white > 20 * static_cast<int>(l.name.size()));
        CHECK(dark > white);
    }
}

TEST_CASE("labels: objects behind the camera get none")
{
    Scene s;
    s.add_object("front", make_box({1, 1, 1}));
    s.add_object("back", make_box({1, 1, 1}));
    s.place("back", {0, -40, 0});
    const CameraState cam{{0, 0, 0.5}, 0.0, 15.0, 3.0, 50.0};  // eye near y = -2.9
    const auto labels = layout_labels(s, cam, 1024, 768);
    REQUIRE(labels.size() == 1);
    CHECK(labels[0].name != "back");
}

TEST_CASE("axis HUD geometry")
{
    const Scene s;
    const auto top = axis_hud_geometry(view_scene(s, ViewPreset::Top), 1024, 768);
    CHECK(top.axes[2].is_point);
    CHECK(top.axes[0].dx == doctest::Approx(1.0));
    CHECK(top.axes[0].dy == doctest::Approx(0.0));
    CHECK(top.axes[1].dx == doctest::Approx(0.0));
    CHECK(top.axes[1].dy == doctest::Approx(-1.0));  // screen y grows downward

    const auto front = axis_hud_geometry(view_scene(s, ViewPreset::Front), 1024, 768);
    CHECK_FALSE(front.axes[2].is_point);
    CHECK(front.axes[0].dx == doctest::Approx(1.0));
    CHECK(front.axes[2].dy < -0.9);
    CHECK(std::abs(front.axes[2].dx) < 1e-12);

    // Directions agree with projecting unit axes from the target.
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> az(-180, 180), el(-80, 80);
    for (int i = 0; i < 100; ++i) {
        const CameraState cam{{0, 0, 0}, az(rng), el(rng), 1000.0, 50.0};
        const auto g = axis_hud_geometry(cam, 1024, 768);
        const auto o = project(cam, cam.target, 1024, 768);
        const std::array<Vec3, 3> units{Vec3{1e-3, 0, 0}, Vec3{0, 1e-3, 0}, Vec3{0, 0, 1e-3}};
        for (int k = 0; k < 3; ++k) {
            const auto p = project(cam, units[k], 1024, 768);
            const double dx = p->x - o->x, dy = p->y - o->y;
            const double len = std::hypot(dx, dy), glen = std::hypot(g.axes[k].dx, g.axes[k].dy);
            if (glen < 0.1)
                continue;
            CHECK(dx / len == doctest::Approx(g.axes[k].dx / glen).epsilon(1e-3).scale(1.0));
            CHECK(dy / len == doctest::Approx(g.axes[k].dy / glen).epsilon(1e-3).scale(1.0));
        }
    }
}

TEST_CASE("ablation: no visual prompting differs only inside overlay regions")
{
    std::mt19937_64 rng(12);
    for (int i = 0; i < 3; ++i) {
        const Scene s = oracle::random_scene(rng, 5, 30);
        const CameraState cam = view_scene(s, ViewPreset::Iso);
        RenderOptions with;
        RenderOptions without;
        without.visual_prompting = false;
        const Image a = render(s, cam, with), b = render(s, cam, without);
        CHECK(b == rasterize(s, cam, without));
        const auto labels = layout_labels(s, cam, with.width, with.height);
        const auto hud = axis_hud_geometry(cam, with.width, with.height);
        for (int y = 0; y < a.height(); ++y)
            for (int x = 0; x < a.width(); ++x) {
                if (a.at(x, y) == b.at(x, y))
                    continue;
                bool in_overlay = hud.region.contains(x, y);
                for (const auto& l : labels)
                    in_overlay = in_overlay || l.box.contains(x, y);
                REQUIRE(in_overlay);
            }
    }
}

TEST_CASE("png round trip")
{
    Image img(70, 65, Rgba{1, 2, 3, 255});
    img.set(5, 6, Rgba{200, 100, 50, 128});
    CHECK(decode_png(encode_png(img)) == img);
}
