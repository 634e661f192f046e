#pragma once

#include <array>
#include <cmath>
#include <numbers>

namespace sceneloom {

/// 3-vector in the world frame: +Z up, +X right, -Y forward. Meters for
/// positions, unitless for scales.
struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    constexpr double& operator[](int i) { return i == 0 ? x : (i == 1 ? y : z); }
    constexpr double operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }

    constexpr Vec3& operator+=(const Vec3& o) { x += o.x; y += o.y; z += o.z; return *this; }
    constexpr Vec3& operator-=(const Vec3& o) { x -= o.x; y -= o.y; z -= o.z; return *this; }
    constexpr Vec3& operator*=(double s) { x *= s; y *= s; z *= s; return *this; }

    friend constexpr bool operator==(const Vec3&, const Vec3&) = default;
};

constexpr Vec3 operator+(Vec3 a, const Vec3& b) { return a += b; }
constexpr Vec3 operator-(Vec3 a, const Vec3& b) { return a -= b; }
constexpr Vec3 operator-(const Vec3& a) { return {-a.x, -a.y, -a.z}; }
constexpr Vec3 operator*(Vec3 a, double s) { return a *= s; }
constexpr Vec3 operator*(double s, Vec3 a) { return a *= s; }
constexpr Vec3 operator/(const Vec3& a, double s) { return {a.x / s, a.y / s, a.z / s}; }

constexpr Vec3 hadamard(const Vec3& a, const Vec3& b) { return {a.x * b.x, a.y * b.y, a.z * b.z}; }
constexpr double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
constexpr Vec3 cross(const Vec3& a, const Vec3& b)
{
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }
inline Vec3 normalized(const Vec3& a)
{
    const double n = norm(a);
    return n > 0.0 ? a / n : a;
}
constexpr Vec3 min(const Vec3& a, const Vec3& b)
{
    return {a.x < b.x ? a.x : b.x, a.y < b.y ? a.y : b.y, a.z < b.z ? a.z : b.z};
}
constexpr Vec3 max(const Vec3& a, const Vec3& b)
{
    return {a.x > b.x ? a.x : b.x, a.y > b.y ? a.y : b.y, a.z > b.z ? a.z : b.z};
}
inline bool is_finite(const Vec3& a) { return std::isfinite(a.x) && std::isfinite(a.y) && std::isfinite(a.z); }

constexpr double deg_to_rad(double deg) { return deg * std::numbers::pi / 180.0; }
constexpr double rad_to_deg(double rad) { return rad * 180.0 / std::numbers::pi; }

/// Wraps an angle in degrees into [-180, 180).
inline double normalize_degrees(double deg)
{
    double a = std::fmod(deg + 180.0, 360.0);
    if (a < 0.0)
        a += 360.0;
    return a - 180.0;
}

/// Row-major 3x3 matrix.
struct Mat3 {
    std::array<Vec3, 3> rows{Vec3{1, 0, 0}, Vec3{0, 1, 0}, Vec3{0, 0, 1}};

    Vec3 operator*(const Vec3& v) const { return {dot(rows[0], v), dot(rows[1], v), dot(rows[2], v)}; }
    Mat3 operator*(const Mat3& o) const
    {
        Mat3 r;
        for (int i = 0; i < 3; ++i) {
            const Vec3 col0{o.rows[0].x, o.rows[1].x, o.rows[2].x};
            const Vec3 col1{o.rows[0].y, o.rows[1].y, o.rows[2].y};
            const Vec3 col2{o.rows[0].z, o.rows[1].z, o.rows[2].z};
            r.rows[i] = {dot(rows[i], col0), dot(rows[i], col1), dot(rows[i], col2)};
        }
        return r;
    }
};

/// R = Rz * Ry * Rx, so the X rotation is applied to a point first.
inline Mat3 rotation_from_euler_degrees(const Vec3& deg)
{
    const double cx = std::cos(deg_to_rad(deg.x)), sx = std::sin(deg_to_rad(deg.x));
    const double cy = std::cos(deg_to_rad(deg.y)), sy = std::sin(deg_to_rad(deg.y));
    const double cz = std::cos(deg_to_rad(deg.z)), sz = std::sin(deg_to_rad(deg.z));
    Mat3 rx{{Vec3{1, 0, 0}, Vec3{0, cx, -sx}, Vec3{0, sx, cx}}};
    Mat3 ry{{Vec3{cy, 0, sy}, Vec3{0, 1, 0}, Vec3{-sy, 0, cy}}};
    Mat3 rz{{Vec3{cz, -sz, 0}, Vec3{sz, cz, 0}, Vec3{0, 0, 1}}};
    return rz * (ry * rx);
}

}  // namespace sceneloom
