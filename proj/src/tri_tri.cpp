#include "sceneloom/tri_tri.hpp"

#include <cmath>

namespace sceneloom {
namespace {

struct P2 {
    double x, y;
};

double orient2d(const P2& a, const P2& b, const P2& c)
{
    return (a.x - c.x) * (b.y - c.y) - (a.y - c.y) * (b.x - c.x);
}

bool intersection_test_vertex(const P2& p1, const P2& q1, const P2& r1, const P2& p2, const P2& q2, const P2& r2)
{
    if (orient2d(r2, p2, q1) >= 0.0) {
        if (orient2d(r2, q2, q1) <= 0.0) {
            if (orient2d(p1, p2, q1) > 0.0)
                return orient2d(p1, q2, q1) <= 0.0;
            return orient2d(p1, p2, r1) >= 0.0 && orient2d(q1, r1, p2) >= 0.0;
        }
        return orient2d(p1, q2, q1) <= 0.0 && orient2d(r2, q2, r1) <= 0.0 && orient2d(q1, r1, q2) >= 0.0;
    }
    if (orient2d(r2, p2, r1) >= 0.0) {
        if (orient2d(q1, r1, r2) >= 0.0)
            return orient2d(p1, p2, r1) >= 0.0;
        return orient2d(q1, r1, q2) >= 0.0 && orient2d(r2, r1, q2) >= 0.0;
    }
    return false;
}

bool intersection_test_edge(const P2& p1, const P2& q1, const P2& r1, const P2& p2, const P2& r2)
{
    if (orient2d(r2, p2, q1) >= 0.0) {
        if (orient2d(p1, p2, q1) >= 0.0)
            return orient2d(p1, q1, r2) >= 0.0;
        return orient2d(q1, r1, p2) >= 0.0 && orient2d(r1, p1, p2) >= 0.0;
    }
    if (orient2d(r2, p2, r1) >= 0.0) {
        if (orient2d(p1, p2, r1) >= 0.0)
            return orient2d(p1, r1, r2) >= 0.0 || orient2d(q1, r1, r2) >= 0.0;
        return false;
    }
    return false;
}

// Both triangles counter-clockwise.
bool ccw_tri_tri_2d(const P2& p1, const P2& q1, const P2& r1, const P2& p2, const P2& q2, const P2& r2)
{
    if (orient2d(p2, q2, p1) >= 0.0) {
        if (orient2d(q2, r2, p1) >= 0.0) {
            if (orient2d(r2, p2, p1) >= 0.0)
                return true;
            return intersection_test_edge(p1, q1, r1, p2, r2);
        }
        if (orient2d(r2, p2, p1) >= 0.0)
            return intersection_test_edge(p1, q1, r1, r2, q2);
        return intersection_test_vertex(p1, q1, r1, p2, q2, r2);
    }
    if (orient2d(q2, r2, p1) >= 0.0) {
        if (orient2d(r2, p2, p1) >= 0.0)
            return intersection_test_edge(p1, q1, r1, q2, p2);
        return intersection_test_vertex(p1, q1, r1, q2, r2, p2);
    }
    return intersection_test_vertex(p1, q1, r1, r2, p2, q2);
}

bool tri_tri_2d(const P2& p1, const P2& q1, const P2& r1, const P2& p2, const P2& q2, const P2& r2)
{
    if (orient2d(p1, q1, r1) < 0.0) {
        if (orient2d(p2, q2, r2) < 0.0)
            return ccw_tri_tri_2d(p1, r1, q1, p2, r2, q2);
        return ccw_tri_tri_2d(p1, r1, q1, p2, q2, r2);
    }
    if (orient2d(p2, q2, r2) < 0.0)
        return ccw_tri_tri_2d(p1, q1, r1, p2, r2, q2);
    return ccw_tri_tri_2d(p1, q1, r1, p2, q2, r2);
}

bool coplanar_tri_tri(const Vec3& p1, const Vec3& q1, const Vec3& r1, const Vec3& p2, const Vec3& q2,
                      const Vec3& r2, const Vec3& normal)
{
    const double nx = std::abs(normal.x), ny = std::abs(normal.y), nz = std::abs(normal.z);
    // Drop the dominant normal axis.
    int u = 0, v = 1;
    if (nx > nz && nx >= ny) {
        u = 1;
        v = 2;
    } else if (ny > nz && ny >= nx) {
        u = 0;
        v = 2;
    }
    auto proj = [&](const Vec3& p) { return P2{p[u], p[v]}; };
    return tri_tri_2d(proj(p1), proj(q1), proj(r1), proj(p2), proj(q2), proj(r2));
}

bool check_min_max(const Vec3& p1, const Vec3& q1, const Vec3& r1, const Vec3& p2, const Vec3& q2, const Vec3& r2)
{
    if (dot(q2 - q1, cross(p2 - q1, p1 - q1)) > 0.0)
        return false;
    return dot(r2 - p1, cross(p2 - p1, r1 - p1)) <= 0.0;
}

// Canonical permutation of the second triangle: p2 alone on its side.
bool tri_tri_3d(const Vec3& p1, const Vec3& q1, const Vec3& r1, const Vec3& p2, const Vec3& q2, const Vec3& r2,
                double dp2, double dq2, double dr2, const Vec3& n1)
{
    if (dp2 > 0.0) {
        if (dq2 > 0.0) return check_min_max(p1, r1, q1, r2, p2, q2);
        if (dr2 > 0.0) return check_min_max(p1, r1, q1, q2, r2, p2);
        return check_min_max(p1, q1, r1, p2, q2, r2);
    }
    if (dp2 < 0.0) {
        if (dq2 < 0.0) return check_min_max(p1, q1, r1, r2, p2, q2);
        if (dr2 < 0.0) return check_min_max(p1, q1, r1, q2, r2, p2);
        return check_min_max(p1, r1, q1, p2, q2, r2);
    }
    if (dq2 < 0.0) {
        if (dr2 >= 0.0) return check_min_max(p1, r1, q1, q2, r2, p2);
        return check_min_max(p1, q1, r1, p2, q2, r2);
    }
    if (dq2 > 0.0) {
        if (dr2 > 0.0) return check_min_max(p1, r1, q1, p2, q2, r2);
        return check_min_max(p1, q1, r1, q2, r2, p2);
    }
    if (dr2 > 0.0) return check_min_max(p1, q1, r1, r2, p2, q2);
    if (dr2 < 0.0) return check_min_max(p1, r1, q1, r2, p2, q2);
    return coplanar_tri_tri(p1, q1, r1, p2, q2, r2, n1);
}

}  // namespace

bool tri_tri_intersect(const Triangle& a, const Triangle& b)
{
    const auto& [p1, q1, r1] = a;
    const auto& [p2, q2, r2] = b;

    const Vec3 n2 = cross(p2 - r2, q2 - r2);
    const double dp1 = dot(p1 - r2, n2);
    const double dq1 = dot(q1 - r2, n2);
    const double dr1 = dot(r1 - r2, n2);
    if (dp1 * dq1 > 0.0 && dp1 * dr1 > 0.0)
        return false;

    const Vec3 n1 = cross(q1 - p1, r1 - p1);
    const double dp2 = dot(p2 - r1, n1);
    const double dq2 = dot(q2 - r1, n1);
    const double dr2 = dot(r2 - r1, n1);
    if (dp2 * dq2 > 0.0 && dp2 * dr2 > 0.0)
        return false;

    // Canonical permutation of the first triangle: p1 alone on its side.
    if (dp1 > 0.0) {
        if (dq1 > 0.0) return tri_tri_3d(r1, p1, q1, p2, r2, q2, dp2, dr2, dq2, n1);
        if (dr1 > 0.0) return tri_tri_3d(q1, r1, p1, p2, r2, q2, dp2, dr2, dq2, n1);
        return tri_tri_3d(p1, q1, r1, p2, q2, r2, dp2, dq2, dr2, n1);
    }
    if (dp1 < 0.0) {
        if (dq1 < 0.0) return tri_tri_3d(r1, p1, q1, p2, q2, r2, dp2, dq2, dr2, n1);
        if (dr1 < 0.0) return tri_tri_3d(q1, r1, p1, p2, q2, r2, dp2, dq2, dr2, n1);
        return tri_tri_3d(p1, q1, r1, p2, r2, q2, dp2, dr2, dq2, n1);
    }
    if (dq1 < 0.0) {
        if (dr1 >= 0.0) return tri_tri_3d(q1, r1, p1, p2, r2, q2, dp2, dr2, dq2, n1);
        return tri_tri_3d(p1, q1, r1, p2, q2, r2, dp2, dq2, dr2, n1);
    }
    if (dq1 > 0.0) {
        if (dr1 > 0.0) return tri_tri_3d(p1, q1, r1, p2, r2, q2, dp2, dr2, dq2, n1);
        return tri_tri_3d(q1, r1, p1, p2, q2, r2, dp2, dq2, dr2, n1);
    }
    if (dr1 > 0.0) return tri_tri_3d(r1, p1, q1, p2, q2, r2, dp2, dq2, dr2, n1);
    if (dr1 < 0.0) return tri_tri_3d(r1, p1, q1, p2, r2, q2, dp2, dr2, dq2, n1);
    return coplanar_tri_tri(p1, q1, r1, p2, q2, r2, n1);
}

}  // namespace sceneloom
