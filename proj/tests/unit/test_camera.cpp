#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "sceneloom/camera.hpp"
#include "sceneloom/error.hpp"
#include "sceneloom/scene.hpp"

using namespace sceneloom;

namespace {

Scene unit_cube_scene()
{
    Scene s;
    s.add_object("cube", make_box({1, 1, 1}));
    s.place("cube", {0, 0, 0.5});
    SceneObject centered = s.get("cube");
    s.remove("cube");
    centered.pose.position = {0, 0, 0};  // centered on the origin, as in the worked example
    s.restore_object(centered);
    return s;
}

std::vector<Vec3> corners_of(const Scene& s)
{
    std::vector<Vec3> out;
    for (const auto& o : s.objects()) {
        const Aabb b = o.world_bounds();
        for (int i = 0; i < 8; ++i)
            out.push_back({i & 1 ? b.max.x : b.min.x, i & 2 ? b.max.y : b.min.y, i & 4 ? b.max.z : b.min.z});
    }
    return out;
}

}  // namespace

TEST_CASE("view_scene: unit cube Front distance is r / tan(fov/2)")
{
    const Scene s = unit_cube_scene();
    const CameraState cam = view_scene(s, ViewPreset::Front, 1.0);
    const double r = std::sqrt(3.0) / 2.0;
    const double want = r / std::tan(25.0 * M_PI / 180.0);
    CHECK(cam.distance == doctest::Approx(want).epsilon(1e-6));
    CHECK(cam.distance == doctest::Approx(1.857).epsilon(1e-3));
    CHECK(cam.azimuth == 0.0);
    CHECK(cam.elevation == 15.0);
    CHECK(cam.fov == 50.0);
    CHECK(cam.target == Vec3{0, 0, 0});

    const CameraState z2 = view_scene(s, ViewPreset::Front, 2.0);
    CHECK(z2.distance == doctest::Approx(2.0 * cam.distance).epsilon(1e-15));
    CHECK_THROWS_AS(view_scene(s, ViewPreset::Front, 0.0), Error);
    CHECK_THROWS_AS(view_scene(s, ViewPreset::Front, -1.0), Error);
}

TEST_CASE("view_scene: presets")
{
    const Scene s = unit_cube_scene();
    CHECK(view_scene(s, ViewPreset::Side).azimuth == 90.0);
    CHECK(view_scene(s, ViewPreset::Side).elevation == 15.0);
    CHECK(view_scene(s, ViewPreset::Top).elevation == 90.0);
    CHECK(view_scene(s, ViewPreset::Iso).azimuth == 45.0);
    CHECK(view_scene(s, ViewPreset::Iso).elevation == 30.0);
    CHECK(parse_view("iso") == ViewPreset::Iso);
    CHECK(parse_view("TOP") == ViewPreset::Top);
    CHECK_THROWS_AS(parse_view("Diagonal"), Error);

    const CameraState empty = view_scene(Scene{});
    CHECK(empty.distance >= 0.5);
    CHECK(empty.target == Vec3{0, 0, 0});
}

TEST_CASE("view_scene resets accumulated rotation and movement")
{
    std::mt19937_64 rng(1);
    const Scene s = oracle::random_scene(rng, 5, 20);
    const CameraState fresh = view_scene(s, ViewPreset::Iso, 1.3);
    CameraState moved = rotate_camera(fresh, 33, -12);
    moved = move_camera(moved, MoveDirection::Left, 2.0);
    moved = move_camera(moved, MoveDirection::Forward, 0.3);
    CHECK(view_scene(s, ViewPreset::Iso, 1.3) == fresh);
    CHECK(focus_on(s, "o0", ViewPreset::Side) == focus_on(s, "o0", ViewPreset::Side));
}

TEST_CASE("focus_on")
{
    const Scene s = unit_cube_scene();
    const CameraState f = focus_on(s, "cube", ViewPreset::Front);
    CHECK(f.target == s.get("cube").world_bounds().center());
    CHECK(f.distance == doctest::Approx(1.5 * view_scene(s, ViewPreset::Front).distance).epsilon(1e-12));
    CHECK_THROWS_AS(focus_on(s, "ghost"), Error);
}

TEST_CASE("rotate_camera")
{
    const CameraState c{{1, 2, 3}, 10, 20, 4, 50};
    const CameraState twice = rotate_camera(rotate_camera(c, 30, 0), 30, 0);
    const CameraState once = rotate_camera(c, 60, 0);
    CHECK(std::abs(twice.azimuth - once.azimuth) <= 1e-9);
    CHECK(rotate_camera(c, 0, 0) == c);
    CHECK(rotate_camera(CameraState{{}, 0, 80, 1, 50}, 0, 20).elevation == 89.0);
    CHECK(rotate_camera(CameraState{{}, 0, -80, 1, 50}, 0, -20).elevation == -89.0);
    CHECK(once.target == c.target);
    CHECK(once.distance == c.distance);
}

TEST_CASE("move_camera")
{
    const CameraState c{{1, 2, 3}, 37, 25, 4, 50};
    const CameraState fb = move_camera(move_camera(c, MoveDirection::Forward, 1), MoveDirection::Backward, 1);
    CHECK(fb.distance == doctest::Approx(c.distance).epsilon(1e-15));
    CHECK(move_camera(c, MoveDirection::Forward, 100).distance == 0.05);
    const CameraState rl = move_camera(move_camera(c, MoveDirection::Right, 2.5), MoveDirection::Left, 2.5);
    CHECK(norm(rl.target - c.target) < 1e-12);
    const CameraState ud = move_camera(move_camera(c, MoveDirection::Up, 0.7), MoveDirection::Down, 0.7);
    CHECK(norm(ud.target - c.target) < 1e-12);
    CHECK_THROWS_AS(move_camera(c, MoveDirection::Up, -1), Error);
    CHECK_THROWS_AS(parse_direction("Sideways"), Error);
    CHECK(parse_direction("forward") == MoveDirection::Forward);
}

TEST_CASE("project: target at the center, eye flagged")
{
    const CameraState c{{1, -2, 0.5}, 70, 35, 3, 50};
    const auto p = project(c, c.target, 1024, 768);
    REQUIRE(p);
    CHECK(p->x == doctest::Approx(512));
    CHECK(p->y == doctest::Approx(384));
    CHECK_FALSE(project(c, camera_basis(c).eye, 1024, 768));
    const Vec3 behind = camera_basis(c).eye - camera_basis(c).forward;
    CHECK_FALSE(project(c, behind, 1024, 768));
}

TEST_CASE("project matches the homogeneous matrix oracle")
{
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> az(-180, 180), el(-85, 85), dist(1, 10), fov(20, 100);
    int compared = 0;
    for (int i = 0; i < 2000; ++i) {
        const bool top = i % 10 == 0;
        const CameraState c{oracle::random_point(rng, -2, 2), az(rng), top ? 90.0 : el(rng), dist(rng), fov(rng)};
        const Vec3 p = oracle::random_point(rng, -3, 3);
        const auto got = project(c, p, 800, 600);
        const auto want = oracle::matrix_project(c.target, c.azimuth, c.elevation, c.distance, c.fov, p, 800, 600);
        REQUIRE(got.has_value() == want.has_value());
        // Near the eye plane pixel coordinates diverge; compare points that
        // land within one viewport of the image.
        if (!got || std::abs(got->x - 400) > 1200 || std::abs(got->y - 300) > 900)
            continue;
        ++compared;
        CHECK(std::abs(got->x - want->x) < 1e-6);
        CHECK(std::abs(got->y - want->y) < 1e-6);
        CHECK(got->depth == doctest::Approx(want->w).epsilon(1e-9));
    }
    CHECK(compared > 1000);
}

TEST_CASE("property: view_scene keeps every corner in view for zoom >= 1")
{
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> zoom(1.0, 3.0);
    const ViewPreset views[] = {ViewPreset::Front, ViewPreset::Side, ViewPreset::Top, ViewPreset::Iso};
    for (int i = 0; i < 60; ++i) {
        const Scene s = oracle::random_scene(rng, 10, 20);
        for (auto v : views) {
            const CameraState cam = view_scene(s, v, i % 3 == 0 ? 1.0 : zoom(rng));
            for (const auto& c : corners_of(s)) {
                const auto p = project(cam, c, 1024, 768);
                REQUIRE(p);
                CHECK(p->x >= 0.0);
                CHECK(p->x <= 1024.0);
                CHECK(p->y >= 0.0);
                CHECK(p->y <= 768.0);
            }
        }
    }
}
