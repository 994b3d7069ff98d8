#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "sthoi/geometry.hpp"

namespace sthoi {

// Row-major likelihood grid; values live in [0,1].
struct Heatmap {
  int width = 0;
  int height = 0;
  std::vector<float> values;

  Heatmap() = default;
  Heatmap(int w, int h, float fill = 0.0f)
      : width(w), height(h), values(static_cast<std::size_t>(w) * h, fill) {}

  float at(int x, int y) const { return values[static_cast<std::size_t>(y) * width + x]; }
  float& at(int x, int y) { return values[static_cast<std::size_t>(y) * width + x]; }
  bool same_shape(const Heatmap& o) const {
    return width == o.width && height == o.height;
  }
};

struct GaussianSpec {
  double cx = 0.0, cy = 0.0;
  double sigma_x = 1.0, sigma_y = 1.0;
};

enum class SizeClass { Small, Medium, Large };
enum class Branch { Part, Human, Context };

struct FusionWeights {
  double part = 1.0 / 3.0;
  double human = 1.0 / 3.0;
  double context = 1.0 / 3.0;
};

struct HeatmapConfig {
  double small_threshold = 0.7;
  double medium_threshold = 0.6;
  double large_threshold = 0.5;
  double single_branch_threshold = 0.6;
  double epsilon = 0.1;   // long-term blend weight
  int tau = 2;            // STC flow temporal offset, seconds
  int n_proposals = 75;

  double threshold_for(SizeClass s) const;
};

// Unnormalized Gaussian sampled at integer pixel coordinates.
Heatmap gaussian_heatmap(const GaussianSpec& g, int width, int height);

// Gaussian centered on the box with sigmas of half its width/height.
Heatmap gt_heatmap(const Box& box, int width, int height);

// sigma = 3 px keypoint map; out-of-grid points are clamped to the border.
// clamped, when given, reports whether clamping happened.
Heatmap keypoint_map(double px, double py, int width = 56, int height = 56,
                     double sigma = 3.0, bool* clamped = nullptr);

// Binary rasters: box interior / limb segments between keypoint pairs.
Heatmap render_box_map(const Box& box, int width, int height);
Heatmap render_skeleton_map(const std::vector<std::pair<double, double>>& keypoints,
                            const std::vector<std::pair<int, int>>& limbs,
                            int width, int height);

// Mean pixel-wise binary cross entropy; pred clamped to [eps, 1-eps].
double bce_heatmap_loss(const Heatmap& pred, const Heatmap& gt,
                        double eps = 1e-7);

// r = object area / human area; boundaries 0.3 and 1.0.
SizeClass size_classify(double human_area, double object_area);

// Divide by the max value so the peak becomes 1; an all-zero map is returned
// unchanged.
Heatmap normalize_peak(const Heatmap& h);

// Tightest box over pixels with value >= t; nullopt when none qualify.
// largest_component restricts the box to the biggest 4-connected blob.
std::optional<Box> threshold_to_box(const Heatmap& h, double t,
                                    bool largest_component = false);

Heatmap fuse_equal(const Heatmap& part, const Heatmap& human,
                   const Heatmap& context);
Heatmap fuse_dynamic(const Heatmap& part, const Heatmap& human,
                     const Heatmap& context, const FusionWeights& w);

// Per-interaction argmax over validation mIoU; ties fall to Part, then Human.
std::vector<Branch> select_branch(
    const std::vector<std::array<double, 3>>& val_miou);

// epsilon weights the long-term map, 1-epsilon the short-term map.
Heatmap blend_long_term(const Heatmap& short_term, const Heatmap& long_term,
                        double epsilon);

// Multi-channel 56x56 raster stack (keypoint/skeleton/box/proposal channels).
struct STCMap {
  std::vector<Heatmap> channels;
};

// Slices [k-tau, k+tau] of the per-second map sequence; out-of-range seconds
// become empty placeholder maps with the same channel layout.
std::vector<STCMap> stc_flow(const std::vector<STCMap>& per_second, int k,
                             int tau);

// STHM raster format: "STHM", u8 version=1, u32le width, u32le height,
// width*height f32le values, row-major.
void write_sthm(std::ostream& os, const Heatmap& h);
Heatmap read_sthm(std::istream& is);
void write_sthm_file(const std::string& path, const Heatmap& h);
Heatmap read_sthm_file(const std::string& path);

}  // namespace sthoi
