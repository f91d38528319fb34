#pragma once

#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

#include "mbfo/image.hpp"
#include "mbfo/otsu.hpp"

namespace mbfo {

/// Per-pixel class indices in [0, m] induced by a threshold set.
struct LabelMap {
  int width = 0;
  int height = 0;
  std::vector<int> labels;

  LabelMap() = default;
  LabelMap(int w, int h) : width(w), height(h), labels(static_cast<std::size_t>(w) * h, 0) {}

  int at(int x, int y) const { return labels[static_cast<std::size_t>(y) * width + x]; }
  int& at(int x, int y) { return labels[static_cast<std::size_t>(y) * width + x]; }
  bool operator==(const LabelMap&) const = default;
};

/// Classifies each pixel by its threshold interval and renders each class at
/// its image-conditional mean intensity. Classes absent from the image render
/// at their range midpoint.
inline std::pair<LabelMap, GrayImage> apply_thresholds(const GrayImage& img, const ThresholdSet& ts) {
  const int m = ts.count();
  // level -> class lookup
  std::vector<int> class_of(kGrayLevels);
  {
    int k = 0;
    for (int lvl = 0; lvl < kGrayLevels; ++lvl) {
      while (k < m && lvl >= ts.levels[k]) ++k;
      class_of[lvl] = k;
    }
  }

  LabelMap labels(img.width, img.height);
  std::vector<std::uint64_t> count(m + 1, 0), sum(m + 1, 0);
  for (std::size_t i = 0; i < img.pixels.size(); ++i) {
    const int k = class_of[img.pixels[i]];
    labels.labels[i] = k;
    ++count[k];
    sum[k] += img.pixels[i];
  }

  std::vector<std::uint8_t> render_value(m + 1);
  for (int k = 0; k <= m; ++k) {
    if (count[k] > 0) {
      render_value[k] = static_cast<std::uint8_t>(
          std::lround(static_cast<double>(sum[k]) / static_cast<double>(count[k])));
    } else {
      const int lo = k == 0 ? 0 : ts.levels[k - 1];
      const int hi = (k == m ? kGrayLevels : ts.levels[k]) - 1;
      render_value[k] = static_cast<std::uint8_t>((lo + hi) / 2);
    }
  }

  GrayImage rendered(img.width, img.height);
  for (std::size_t i = 0; i < img.pixels.size(); ++i)
    rendered.pixels[i] = render_value[labels.labels[i]];
  return {std::move(labels), std::move(rendered)};
}

/// Marks a pixel as edge when any in-bounds 8-neighbor has strictly lower
/// intensity, i.e. the pixel is the greater side of a differing pair. Borders
/// use the truncated neighborhood; no padding.
inline EdgeMap detect_edges(const GrayImage& img) {
  EdgeMap edges(img.width, img.height);
  for (int y = 0; y < img.height; ++y) {
    for (int x = 0; x < img.width; ++x) {
      const std::uint8_t v = img.at(x, y);
      bool edge = false;
      for (int dy = -1; dy <= 1 && !edge; ++dy) {
        for (int dx = -1; dx <= 1 && !edge; ++dx) {
          if (dx == 0 && dy == 0) continue;
          const int nx = x + dx, ny = y + dy;
          if (nx < 0 || ny < 0 || nx >= img.width || ny >= img.height) continue;
          edge = img.at(nx, ny) < v;
        }
      }
      edges.set(x, y, edge);
    }
  }
  return edges;
}

/// Removes connected components of true pixels smaller than `min_pixels`
/// under 4- or 8-connectivity.
inline EdgeMap area_open(const EdgeMap& edges, int min_pixels, int connectivity = 8) {
  if (min_pixels < 1) throw InvalidConfig("minimum component size must be >= 1");
  if (connectivity != 4 && connectivity != 8) throw InvalidConfig("connectivity must be 4 or 8");

  static constexpr int dx8[] = {-1, 0, 1, -1, 1, -1, 0, 1};
  static constexpr int dy8[] = {-1, -1, -1, 0, 0, 1, 1, 1};
  static constexpr int dx4[] = {0, -1, 1, 0};
  static constexpr int dy4[] = {-1, 0, 0, 1};
  const int* dxs = connectivity == 8 ? dx8 : dx4;
  const int* dys = connectivity == 8 ? dy8 : dy4;
  const int ndirs = connectivity;

  EdgeMap out = edges;
  std::vector<std::uint8_t> visited(edges.mask.size(), 0);
  std::vector<std::size_t> stack, component;
  for (std::size_t start = 0; start < edges.mask.size(); ++start) {
    if (!edges.mask[start] || visited[start]) continue;
    stack.assign(1, start);
    component.clear();
    visited[start] = 1;
    while (!stack.empty()) {
      const std::size_t idx = stack.back();
      stack.pop_back();
      component.push_back(idx);
      const int x = static_cast<int>(idx % edges.width);
      const int y = static_cast<int>(idx / edges.width);
      for (int d = 0; d < ndirs; ++d) {
        const int nx = x + dxs[d], ny = y + dys[d];
        if (nx < 0 || ny < 0 || nx >= edges.width || ny >= edges.height) continue;
        const std::size_t nidx = static_cast<std::size_t>(ny) * edges.width + nx;
        if (edges.mask[nidx] && !visited[nidx]) {
          visited[nidx] = 1;
          stack.push_back(nidx);
        }
      }
    }
    if (component.size() < static_cast<std::size_t>(min_pixels))
      for (auto idx : component) out.mask[idx] = 0;
  }
  return out;
}

}  // namespace mbfo
