#include "sipdg/geometry.hpp"

#include <algorithm>

namespace sipdg {

bool Rect::on_boundary(Vec2 p, double tol) const {
  const double s = tol * std::max(width(), height());
  const bool inside_x = p.x >= lo.x - s && p.x <= hi.x + s;
  const bool inside_y = p.y >= lo.y - s && p.y <= hi.y + s;
  if (!inside_x || !inside_y) return false;
  return std::abs(p.x - lo.x) <= s || std::abs(p.x - hi.x) <= s ||
         std::abs(p.y - lo.y) <= s || std::abs(p.y - hi.y) <= s;
}

}  // namespace sipdg
