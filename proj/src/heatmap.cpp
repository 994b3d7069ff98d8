#include "sthoi/heatmap.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <queue>

namespace sthoi {

double HeatmapConfig::threshold_for(SizeClass s) const {
  switch (s) {
    case SizeClass::Small: return small_threshold;
    case SizeClass::Medium: return medium_threshold;
    case SizeClass::Large: return large_threshold;
  }
  return medium_threshold;
}

Heatmap gaussian_heatmap(const GaussianSpec& g, int width, int height) {
  if (g.sigma_x <= 0.0 || g.sigma_y <= 0.0) {
    throw invalid_input("gaussian_heatmap: sigmas must be positive");
  }
  Heatmap h(width, height);
  const double inv2sx = 1.0 / (2.0 * g.sigma_x * g.sigma_x);
  const double inv2sy = 1.0 / (2.0 * g.sigma_y * g.sigma_y);
  for (int y = 0; y < height; ++y) {
    const double dy = y - g.cy;
    for (int x = 0; x < width; ++x) {
      const double dx = x - g.cx;
      h.at(x, y) = static_cast<float>(std::exp(-(dx * dx * inv2sx + dy * dy * inv2sy)));
    }
  }
  return h;
}

Heatmap gt_heatmap(const Box& box, int width, int height) {
  check_box(box);
  if (box.area() <= 0.0) throw invalid_input("gt_heatmap: zero-area box");
  if (box.cx() < 0 || box.cx() > width - 1 || box.cy() < 0 ||
      box.cy() > height - 1) {
    throw invalid_input("gt_heatmap: box center outside the grid");
  }
  return gaussian_heatmap({box.cx(), box.cy(), box.w / 2.0, box.h / 2.0},
                          width, height);
}

Heatmap keypoint_map(double px, double py, int width, int height, double sigma,
                     bool* clamped) {
  const double cx = std::clamp(px, 0.0, static_cast<double>(width - 1));
  const double cy = std::clamp(py, 0.0, static_cast<double>(height - 1));
  if (clamped) *clamped = (cx != px || cy != py);
  return gaussian_heatmap({cx, cy, sigma, sigma}, width, height);
}

Heatmap render_box_map(const Box& box, int width, int height) {
  check_box(box);
  Heatmap h(width, height);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      if (x >= box.x && x < box.x + box.w && y >= box.y && y < box.y + box.h) {
        h.at(x, y) = 1.0f;
      }
    }
  }
  return h;
}

Heatmap render_skeleton_map(
    const std::vector<std::pair<double, double>>& keypoints,
    const std::vector<std::pair<int, int>>& limbs, int width, int height) {
  Heatmap h(width, height);
  auto plot = [&](int x, int y) {
    if (x >= 0 && x < width && y >= 0 && y < height) h.at(x, y) = 1.0f;
  };
  for (const auto& [a, b] : limbs) {
    if (a < 0 || b < 0 || a >= static_cast<int>(keypoints.size()) ||
        b >= static_cast<int>(keypoints.size())) {
      throw invalid_input("render_skeleton_map: limb index out of range");
    }
    // Bresenham on rounded endpoints.
    int x0 = static_cast<int>(std::lround(keypoints[a].first));
    int y0 = static_cast<int>(std::lround(keypoints[a].second));
    const int x1 = static_cast<int>(std::lround(keypoints[b].first));
    const int y1 = static_cast<int>(std::lround(keypoints[b].second));
    const int dx = std::abs(x1 - x0), sx = x0 < x1 ? 1 : -1;
    const int dy = -std::abs(y1 - y0), sy = y0 < y1 ? 1 : -1;
    int err = dx + dy;
    while (true) {
      plot(x0, y0);
      if (x0 == x1 && y0 == y1) break;
      const int e2 = 2 * err;
      if (e2 >= dy) { err += dy; x0 += sx; }
      if (e2 <= dx) { err += dx; y0 += sy; }
    }
  }
  return h;
}

double bce_heatmap_loss(const Heatmap& pred, const Heatmap& gt, double eps) {
  if (!pred.same_shape(gt)) throw invalid_input("bce_heatmap_loss: shape mismatch");
  if (pred.values.empty()) throw invalid_input("bce_heatmap_loss: empty heatmap");
  double sum = 0.0;
  for (std::size_t i = 0; i < pred.values.size(); ++i) {
    const double p = std::clamp(static_cast<double>(pred.values[i]), eps, 1.0 - eps);
    const double g = gt.values[i];
    sum += -(g * std::log(p) + (1.0 - g) * std::log(1.0 - p));
  }
  return sum / pred.values.size();
}

SizeClass size_classify(double human_area, double object_area) {
  if (human_area <= 0.0) throw invalid_input("size_classify: human area must be positive");
  const double r = object_area / human_area;
  if (r <= 0.3) return SizeClass::Small;
  if (r <= 1.0) return SizeClass::Medium;
  return SizeClass::Large;
}

Heatmap normalize_peak(const Heatmap& h) {
  float mx = 0.0f;
  for (float v : h.values) mx = std::max(mx, v);
  if (mx <= 0.0f) return h;
  Heatmap out = h;
  for (float& v : out.values) v /= mx;
  return out;
}

std::optional<Box> threshold_to_box(const Heatmap& h, double t,
                                    bool largest_component) {
  std::vector<char> mask(h.values.size(), 0);
  bool any = false;
  for (std::size_t i = 0; i < h.values.size(); ++i) {
    if (h.values[i] >= t) {
      mask[i] = 1;
      any = true;
    }
  }
  if (!any) return std::nullopt;

  if (largest_component) {
    // Keep only the biggest 4-connected blob.
    std::vector<int> label(mask.size(), -1);
    int best_label = -1, best_size = 0, next = 0;
    for (int y = 0; y < h.height; ++y) {
      for (int x = 0; x < h.width; ++x) {
        const std::size_t idx = static_cast<std::size_t>(y) * h.width + x;
        if (!mask[idx] || label[idx] >= 0) continue;
        int size = 0;
        std::queue<std::pair<int, int>> q;
        q.push({x, y});
        label[idx] = next;
        while (!q.empty()) {
          auto [cx, cy] = q.front();
          q.pop();
          ++size;
          constexpr int dx[] = {1, -1, 0, 0}, dy[] = {0, 0, 1, -1};
          for (int d = 0; d < 4; ++d) {
            const int nx = cx + dx[d], ny = cy + dy[d];
            if (nx < 0 || ny < 0 || nx >= h.width || ny >= h.height) continue;
            const std::size_t ni = static_cast<std::size_t>(ny) * h.width + nx;
            if (mask[ni] && label[ni] < 0) {
              label[ni] = next;
              q.push({nx, ny});
            }
          }
        }
        if (size > best_size) {
          best_size = size;
          best_label = next;
        }
        ++next;
      }
    }
    for (std::size_t i = 0; i < mask.size(); ++i)
      if (mask[i] && label[i] != best_label) mask[i] = 0;
  }

  int min_x = h.width, min_y = h.height, max_x = -1, max_y = -1;
  for (int y = 0; y < h.height; ++y) {
    for (int x = 0; x < h.width; ++x) {
      if (!mask[static_cast<std::size_t>(y) * h.width + x]) continue;
      min_x = std::min(min_x, x);
      min_y = std::min(min_y, y);
      max_x = std::max(max_x, x);
      max_y = std::max(max_y, y);
    }
  }
  return Box{static_cast<double>(min_x), static_cast<double>(min_y),
             static_cast<double>(max_x - min_x + 1),
             static_cast<double>(max_y - min_y + 1)};
}

Heatmap fuse_dynamic(const Heatmap& part, const Heatmap& human,
                     const Heatmap& context, const FusionWeights& w) {
  if (!part.same_shape(human) || !part.same_shape(context)) {
    throw invalid_input("fuse: shape mismatch");
  }
  if (w.part < 0.0 || w.human < 0.0 || w.context < 0.0 ||
      std::abs(w.part + w.human + w.context - 1.0) > 1e-9) {
    throw invalid_input("fuse_dynamic: weights must be nonnegative and sum to 1");
  }
  Heatmap out(part.width, part.height);
  for (std::size_t i = 0; i < out.values.size(); ++i) {
    out.values[i] = static_cast<float>(w.part * part.values[i] +
                                       w.human * human.values[i] +
                                       w.context * context.values[i]);
  }
  return out;
}

Heatmap fuse_equal(const Heatmap& part, const Heatmap& human,
                   const Heatmap& context) {
  // Same code path as dynamic fusion so the two agree bitwise at beta = 1/3.
  return fuse_dynamic(part, human, context, FusionWeights{});
}

std::vector<Branch> select_branch(
    const std::vector<std::array<double, 3>>& val_miou) {
  std::vector<Branch> out;
  out.reserve(val_miou.size());
  for (const auto& row : val_miou) {
    int best = 0;
    for (int b = 1; b < 3; ++b)
      if (row[b] > row[best]) best = b;
    out.push_back(static_cast<Branch>(best));
  }
  return out;
}

Heatmap blend_long_term(const Heatmap& short_term, const Heatmap& long_term,
                        double epsilon) {
  if (!short_term.same_shape(long_term)) {
    throw invalid_input("blend_long_term: shape mismatch");
  }
  if (epsilon < 0.0 || epsilon > 1.0) {
    throw invalid_input("blend_long_term: epsilon must be in [0,1]");
  }
  Heatmap out(short_term.width, short_term.height);
  for (std::size_t i = 0; i < out.values.size(); ++i) {
    out.values[i] = static_cast<float>(epsilon * long_term.values[i] +
                                       (1.0 - epsilon) * short_term.values[i]);
  }
  return out;
}

std::vector<STCMap> stc_flow(const std::vector<STCMap>& per_second, int k,
                             int tau) {
  if (tau < 0) throw invalid_input("stc_flow: tau must be >= 0");
  int channels = 0, w = 56, h = 56;
  for (const auto& m : per_second) {
    if (!m.channels.empty()) {
      channels = static_cast<int>(m.channels.size());
      w = m.channels.front().width;
      h = m.channels.front().height;
      break;
    }
  }
  std::vector<STCMap> out;
  out.reserve(2 * tau + 1);
  for (int s = k - tau; s <= k + tau; ++s) {
    if (s >= 0 && s < static_cast<int>(per_second.size())) {
      out.push_back(per_second[s]);
    } else {
      STCMap empty;
      for (int c = 0; c < channels; ++c) empty.channels.emplace_back(w, h);
      out.push_back(std::move(empty));
    }
  }
  return out;
}

namespace {

void put_u32le(std::ostream& os, std::uint32_t v) {
  char b[4] = {static_cast<char>(v & 0xff), static_cast<char>((v >> 8) & 0xff),
               static_cast<char>((v >> 16) & 0xff),
               static_cast<char>((v >> 24) & 0xff)};
  os.write(b, 4);
}

std::uint32_t get_u32le(std::istream& is) {
  unsigned char b[4];
  is.read(reinterpret_cast<char*>(b), 4);
  return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
         (static_cast<std::uint32_t>(b[2]) << 16) |
         (static_cast<std::uint32_t>(b[3]) << 24);
}

}  // namespace

void write_sthm(std::ostream& os, const Heatmap& h) {
  os.write("STHM", 4);
  const char version = 1;
  os.write(&version, 1);
  put_u32le(os, static_cast<std::uint32_t>(h.width));
  put_u32le(os, static_cast<std::uint32_t>(h.height));
  static_assert(sizeof(float) == 4);
  for (float v : h.values) {
    std::uint32_t bits;
    std::memcpy(&bits, &v, 4);
    put_u32le(os, bits);
  }
}

Heatmap read_sthm(std::istream& is) {
  char magic[4];
  is.read(magic, 4);
  if (!is || std::memcmp(magic, "STHM", 4) != 0) {
    throw invalid_input("read_sthm: bad magic");
  }
  char version = 0;
  is.read(&version, 1);
  if (version != 1) throw invalid_input("read_sthm: unsupported version");
  const std::uint32_t w = get_u32le(is);
  const std::uint32_t h = get_u32le(is);
  Heatmap out(static_cast<int>(w), static_cast<int>(h));
  for (auto& v : out.values) {
    const std::uint32_t bits = get_u32le(is);
    std::memcpy(&v, &bits, 4);
  }
  if (!is) throw invalid_input("read_sthm: truncated file");
  return out;
}

void write_sthm_file(const std::string& path, const Heatmap& h) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw invalid_input("cannot open for writing: " + path);
  write_sthm(os, h);
}

Heatmap read_sthm_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw invalid_input("cannot open: " + path);
  return read_sthm(is);
}

}  // namespace sthoi
