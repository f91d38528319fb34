// Independent brute-force oracles used only by the test suites. These stay
// deliberately naive and share no code with the library implementations
// they check.
#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <vector>

#include "mbfo/image.hpp"
#include "mbfo/segment.hpp"

namespace oracles {

// Pratt figure of merit with a direct nearest-pixel scan per candidate pixel.
inline double fom_brute(const mbfo::EdgeMap& cand, const mbfo::EdgeMap& ref, double alpha) {
  std::vector<std::pair<int, int>> ref_pts;
  for (int y = 0; y < ref.height; ++y)
    for (int x = 0; x < ref.width; ++x)
      if (ref.at(x, y)) ref_pts.emplace_back(x, y);
  std::size_t n_cand = 0;
  double sum = 0.0;
  for (int y = 0; y < cand.height; ++y) {
    for (int x = 0; x < cand.width; ++x) {
      if (!cand.at(x, y)) continue;
      ++n_cand;
      double best = std::numeric_limits<double>::infinity();
      for (auto [rx, ry] : ref_pts) {
        const double d2 = double(x - rx) * (x - rx) + double(y - ry) * (y - ry);
        best = std::min(best, d2);
      }
      sum += 1.0 / (1.0 + alpha * best);
    }
  }
  if (n_cand == 0) return 0.0;
  return sum / double(std::max(n_cand, ref_pts.size()));
}

// Rand index by explicit enumeration of all unordered pixel pairs.
inline double rand_index_brute(const std::vector<int>& a, const std::vector<int>& b) {
  const std::size_t n = a.size();
  std::uint64_t agree = 0, total = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      ++total;
      if ((a[i] == a[j]) == (b[i] == b[j])) ++agree;
    }
  }
  return total == 0 ? 1.0 : double(agree) / double(total);
}

// Variation of information from explicitly built frequency tables, in nats.
inline double vi_brute(const std::vector<int>& a, const std::vector<int>& b) {
  const double n = double(a.size());
  std::map<int, int> ca, cb;
  std::map<std::pair<int, int>, int> cj;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ++ca[a[i]];
    ++cb[b[i]];
    ++cj[{a[i], b[i]}];
  }
  double ha = 0.0, hb = 0.0, hab = 0.0;
  for (auto& [k, c] : ca) ha -= c / n * std::log(c / n);
  for (auto& [k, c] : cb) hb -= c / n * std::log(c / n);
  for (auto& [k, c] : cj) hab -= c / n * std::log(c / n);
  // VI = 2 H(A,B) - H(A) - H(B)
  return 2.0 * hab - ha - hb;
}

// Recursive flood fill component sizes for a binary mask.
inline std::vector<int> component_sizes_brute(const mbfo::EdgeMap& mask, int connectivity) {
  std::vector<int> sizes;
  std::vector<char> seen(mask.mask.size(), 0);
  auto fill = [&](auto&& self, int x, int y) -> int {
    if (x < 0 || y < 0 || x >= mask.width || y >= mask.height) return 0;
    const std::size_t idx = std::size_t(y) * mask.width + x;
    if (seen[idx] || !mask.mask[idx]) return 0;
    seen[idx] = 1;
    int n = 1;
    for (int dy = -1; dy <= 1; ++dy)
      for (int dx = -1; dx <= 1; ++dx) {
        if (dx == 0 && dy == 0) continue;
        if (connectivity == 4 && dx != 0 && dy != 0) continue;
        n += self(self, x + dx, y + dy);
      }
    return n;
  };
  for (int y = 0; y < mask.height; ++y)
    for (int x = 0; x < mask.width; ++x)
      if (mask.at(x, y) && !seen[std::size_t(y) * mask.width + x])
        sizes.push_back(fill(fill, x, y));
  return sizes;
}

// Classical bi-level Otsu by direct O(L) scan, lexicographic tie-break.
inline std::pair<int, double> bilevel_otsu_brute(const mbfo::Histogram& hist) {
  const double n = double(hist.total);
  double mu_t = 0.0;
  for (int i = 0; i < 256; ++i) mu_t += i * hist.counts[i] / n;
  int best_t = 1;
  double best_j = -1.0;
  for (int t = 1; t <= 255; ++t) {
    double w0 = 0.0, s0 = 0.0;
    for (int i = 0; i < t; ++i) {
      w0 += hist.counts[i] / n;
      s0 += i * hist.counts[i] / n;
    }
    const double w1 = 1.0 - w0;
    double j = 0.0;
    if (w0 > 0.0) j += w0 * (s0 / w0 - mu_t) * (s0 / w0 - mu_t);
    if (w1 > 0.0) {
      const double mu1 = (mu_t - s0) / w1;
      j += w1 * (mu1 - mu_t) * (mu1 - mu_t);
    }
    if (j > best_j) {
      best_j = j;
      best_t = t;
    }
  }
  return {best_t, best_j};
}

}  // namespace oracles
