#include "sthoi/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace sthoi {

bool box_valid(const Box& b) {
  return std::isfinite(b.x) && std::isfinite(b.y) && std::isfinite(b.w) &&
         std::isfinite(b.h) && b.w >= 0.0 && b.h >= 0.0;
}

void check_box(const Box& b) {
  if (!box_valid(b)) {
    throw invalid_input("invalid box: coordinates must be finite with w,h >= 0");
  }
}

double intersection_area(const Box& a, const Box& b) {
  const double ix = std::min(a.x + a.w, b.x + b.w) - std::max(a.x, b.x);
  const double iy = std::min(a.y + a.h, b.y + b.h) - std::max(a.y, b.y);
  if (ix <= 0.0 || iy <= 0.0) return 0.0;
  return ix * iy;
}

double union_area(const Box& a, const Box& b) {
  return a.area() + b.area() - intersection_area(a, b);
}

double iou2d(const Box& a, const Box& b) {
  check_box(a);
  check_box(b);
  const double u = union_area(a, b);
  if (u <= 0.0) return 0.0;
  return intersection_area(a, b) / u;
}

double tube_iou3d(const Tube& a, const Tube& b) {
  double inter = 0.0;
  double uni = 0.0;
  const std::size_t n = std::max(a.boxes.size(), b.boxes.size());
  static const Box kEmpty{};
  for (std::size_t t = 0; t < n; ++t) {
    const Box& ba = t < a.boxes.size() ? a.boxes[t] : kEmpty;
    const Box& bb = t < b.boxes.size() ? b.boxes[t] : kEmpty;
    check_box(ba);
    check_box(bb);
    inter += intersection_area(ba, bb);
    uni += union_area(ba, bb);
  }
  if (uni <= 0.0) return 0.0;
  return inter / uni;
}

double center_distance(const Box& a, const Box& b) {
  check_box(a);
  check_box(b);
  return std::hypot(a.cx() - b.cx(), a.cy() - b.cy());
}

}  // namespace sthoi
