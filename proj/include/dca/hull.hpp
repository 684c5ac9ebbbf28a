#pragma once

#include <utility>
#include <vector>

#include "dca/rational.hpp"

namespace dca {

using Point2 = std::pair<Rat, Rat>;

// Sign of the cross product (b-a) x (c-a): +1 left turn, -1 right, 0 collinear.
int orientation2(const Point2& a, const Point2& b, const Point2& c);

// Convex hull, counterclockwise, no repeated first point. Collinear inputs
// give the extreme segment endpoints; a single point gives itself.
std::vector<Point2> convex_hull(std::vector<Point2> pts);

// Exact membership of p in the convex hull of pts (boundary counts as inside).
bool in_convex_hull(const Point2& p, const std::vector<Point2>& pts);

}  // namespace dca
