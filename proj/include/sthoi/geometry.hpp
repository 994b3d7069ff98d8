#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace sthoi {

// Raised when caller-supplied data violates a precondition (NaN coordinates,
// duplicate ids, malformed records...).
class invalid_input : public std::runtime_error {
 public:
  explicit invalid_input(const std::string& what) : std::runtime_error(what) {}
};

// Axis-aligned rectangle in pixel coordinates, top-left anchored.
struct Box {
  double x = 0.0;
  double y = 0.0;
  double w = 0.0;
  double h = 0.0;

  double area() const { return w * h; }
  double cx() const { return x + w / 2.0; }
  double cy() const { return y + h / 2.0; }

  bool operator==(const Box&) const = default;
};

// Per-frame box sequence inside a one-second window.
struct Tube {
  std::vector<Box> boxes;
};

bool box_valid(const Box& b);
void check_box(const Box& b);

double intersection_area(const Box& a, const Box& b);
double union_area(const Box& a, const Box& b);

// |a ∩ b| / |a ∪ b|. Defined as 0 when both areas are 0.
double iou2d(const Box& a, const Box& b);

// Slice-sum tube IoU: Σ_t inter_t / Σ_t union_t. The shorter tube is padded
// with empty boxes (0 intersection, full union contribution from the other
// side). Two entirely empty tubes give 0.
double tube_iou3d(const Tube& a, const Tube& b);

// Euclidean distance between box centers.
double center_distance(const Box& a, const Box& b);

}  // namespace sthoi
