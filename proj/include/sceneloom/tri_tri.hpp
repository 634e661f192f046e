#pragma once

#include "sceneloom/mesh.hpp"

namespace sceneloom {

/// True iff the two closed triangles share at least one point. Shared
/// vertices and edges count as intersecting. Coplanar pairs are resolved in
/// the 2D projection that maximises the projected area.
///
/// Orientation-predicate formulation (Guigue and Devillers, 2003): each
/// triangle is tested against the other's supporting plane, then the two
/// line intervals are compared via four more orientation signs.
bool tri_tri_intersect(const Triangle& a, const Triangle& b);

}  // namespace sceneloom
