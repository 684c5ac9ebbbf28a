#include "dca/hull.hpp"

#include <algorithm>

namespace dca {

int orientation2(const Point2& a, const Point2& b, const Point2& c) {
  Rat cross = (b.first - a.first) * (c.second - a.second) -
              (b.second - a.second) * (c.first - a.first);
  return sgn(cross);
}

std::vector<Point2> convex_hull(std::vector<Point2> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  size_t n = pts.size();
  if (n <= 2) return pts;

  std::vector<Point2> hull(2 * n);
  size_t k = 0;
  for (size_t i = 0; i < n; ++i) {  // lower
    while (k >= 2 && orientation2(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  size_t lower = k + 1;
  for (size_t i = n - 1; i-- > 0;) {  // upper
    while (k >= lower && orientation2(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  if (hull.size() < 3) {
    // all collinear: keep the extreme points
    return {pts.front(), pts.back()};
  }
  return hull;
}

namespace {

bool on_segment(const Point2& p, const Point2& a, const Point2& b) {
  if (orientation2(a, b, p) != 0) return false;
  Rat lo1 = std::min(a.first, b.first), hi1 = std::max(a.first, b.first);
  Rat lo2 = std::min(a.second, b.second), hi2 = std::max(a.second, b.second);
  return p.first >= lo1 && p.first <= hi1 && p.second >= lo2 && p.second <= hi2;
}

}  // namespace

bool in_convex_hull(const Point2& p, const std::vector<Point2>& pts) {
  if (pts.empty()) return false;
  std::vector<Point2> hull = convex_hull(pts);
  if (hull.size() == 1) return p == hull[0];
  if (hull.size() == 2) return on_segment(p, hull[0], hull[1]);
  for (size_t i = 0; i < hull.size(); ++i) {
    const Point2& a = hull[i];
    const Point2& b = hull[(i + 1) % hull.size()];
    if (orientation2(a, b, p) < 0) return false;
  }
  return true;
}

}  // namespace dca
