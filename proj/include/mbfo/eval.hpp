#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <vector>

#include <nlohmann/json.hpp>

#include "mbfo/image.hpp"
#include "mbfo/segment.hpp"

namespace mbfo {

inline constexpr double kPrattAlpha = 1.0 / 9.0;

struct MetricReport {
  double figure_of_merit = 0.0;
  double rand_index = 0.0;
  double variation_of_information = 0.0;
  std::uint64_t candidate_edges = 0;
  std::uint64_t reference_edges = 0;
  std::uint64_t pairs_agree = 0;
  std::uint64_t pairs_total = 0;
};

inline void to_json(nlohmann::json& j, const MetricReport& r) {
  j = nlohmann::json{
      {"fom", r.figure_of_merit},
      {"rand_index", r.rand_index},
      {"vi", r.variation_of_information},
      {"counts",
       {{"candidate_edges", r.candidate_edges},
        {"reference_edges", r.reference_edges},
        {"pairs_agree", r.pairs_agree},
        {"pairs_total", r.pairs_total}}},
  };
}

namespace detail {

// Felzenszwalb-Huttenlocher 1-D squared distance transform.
inline void edt_1d(const std::vector<double>& f, std::vector<double>& d) {
  const int n = static_cast<int>(f.size());
  d.assign(n, 0.0);
  std::vector<int> v(n);
  std::vector<double> z(n + 1);
  int k = 0;
  v[0] = 0;
  z[0] = -std::numeric_limits<double>::infinity();
  z[1] = std::numeric_limits<double>::infinity();
  for (int q = 1; q < n; ++q) {
    double s;
    while (true) {
      s = ((f[q] + q * q) - (f[v[k]] + v[k] * v[k])) / (2.0 * q - 2.0 * v[k]);
      if (s > z[k]) break;
      --k;
    }
    ++k;
    v[k] = q;
    z[k] = s;
    z[k + 1] = std::numeric_limits<double>::infinity();
  }
  k = 0;
  for (int q = 0; q < n; ++q) {
    while (z[k + 1] < q) ++k;
    d[q] = (q - v[k]) * (q - v[k]) + f[v[k]];
  }
}

}  // namespace detail

/// Exact squared Euclidean distance from every pixel to the nearest true
/// pixel of `mask`. Infinity where the mask is empty.
inline std::vector<double> squared_distance_transform(const EdgeMap& mask) {
  const int w = mask.width, h = mask.height;
  // Large finite sentinel: infinities break the parabola intersection math.
  const double far = 1e12 + static_cast<double>(w) * w + static_cast<double>(h) * h;
  std::vector<double> dist(static_cast<std::size_t>(w) * h);
  for (std::size_t i = 0; i < dist.size(); ++i) dist[i] = mask.mask[i] ? 0.0 : far;

  std::vector<double> col(h), out(std::max(w, h));
  for (int x = 0; x < w; ++x) {
    for (int y = 0; y < h; ++y) col[y] = dist[static_cast<std::size_t>(y) * w + x];
    detail::edt_1d(col, out);
    for (int y = 0; y < h; ++y) dist[static_cast<std::size_t>(y) * w + x] = out[y];
  }
  std::vector<double> row(w);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) row[x] = dist[static_cast<std::size_t>(y) * w + x];
    detail::edt_1d(row, out);
    for (int x = 0; x < w; ++x) dist[static_cast<std::size_t>(y) * w + x] = out[x];
  }
  return dist;
}

/// Pratt figure of merit: (1/max(Nc, Nr)) * sum over candidate pixels of
/// 1 / (1 + alpha * d^2), d the distance to the nearest reference edge pixel.
inline double figure_of_merit(const EdgeMap& candidate, const EdgeMap& reference,
                              double alpha = kPrattAlpha) {
  if (candidate.width != reference.width || candidate.height != reference.height)
    throw DimensionMismatch("edge maps differ in size");
  const std::uint64_t n_ref = reference.count();
  if (n_ref == 0) throw EmptyReference();
  const std::uint64_t n_cand = candidate.count();
  if (n_cand == 0) return 0.0;

  const auto d2 = squared_distance_transform(reference);
  double sum = 0.0;
  for (std::size_t i = 0; i < candidate.mask.size(); ++i)
    if (candidate.mask[i]) sum += 1.0 / (1.0 + alpha * d2[i]);
  return sum / static_cast<double>(std::max(n_cand, n_ref));
}

namespace detail {

struct PairTally {
  std::uint64_t agree = 0;
  std::uint64_t total = 0;
};

// Contingency-table pair agreement over two labelings of equal length.
inline PairTally pair_tally(const std::vector<int>& a, const std::vector<int>& b) {
  std::map<int, std::uint64_t> ca, cb;
  std::map<std::pair<int, int>, std::uint64_t> cj;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ++ca[a[i]];
    ++cb[b[i]];
    ++cj[{a[i], b[i]}];
  }
  auto choose2 = [](std::uint64_t n) { return n * (n - 1) / 2; };
  const std::uint64_t n = a.size();
  std::uint64_t sa = 0, sb = 0, sj = 0;
  for (auto& [k, v] : ca) sa += choose2(v);
  for (auto& [k, v] : cb) sb += choose2(v);
  for (auto& [k, v] : cj) sj += choose2(v);
  PairTally t;
  t.total = choose2(n);
  // same-in-both + different-in-both
  t.agree = sj + (t.total - sa - sb + sj);
  return t;
}

inline double entropy_terms(const std::vector<int>& a, const std::vector<int>& b, double log_base) {
  const double n = static_cast<double>(a.size());
  std::map<int, std::uint64_t> ca, cb;
  std::map<std::pair<int, int>, std::uint64_t> cj;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ++ca[a[i]];
    ++cb[b[i]];
    ++cj[{a[i], b[i]}];
  }
  auto h = [&](auto& table) {
    double s = 0.0;
    for (auto& [k, c] : table) {
      const double p = c / n;
      if (p > 0.0) s -= p * std::log(p);
    }
    return s / std::log(log_base);
  };
  const double ha = h(ca), hb = h(cb);
  double mi = 0.0;
  for (auto& [key, c] : cj) {
    const double pj = c / n;
    const double pa = ca[key.first] / n;
    const double pb = cb[key.second] / n;
    if (pj > 0.0) mi += pj * std::log(pj / (pa * pb));
  }
  mi /= std::log(log_base);
  return ha + hb - 2.0 * mi;
}

inline std::vector<int> as_labels(const EdgeMap& e) {
  return std::vector<int>(e.mask.begin(), e.mask.end());
}

}  // namespace detail

/// Fraction of unordered pixel pairs on which the two labelings agree
/// (co-assigned in both or separated in both).
inline double rand_index(const std::vector<int>& a, const std::vector<int>& b) {
  if (a.size() != b.size()) throw DimensionMismatch("labelings differ in size");
  if (a.size() < 2) return 1.0;
  const auto t = detail::pair_tally(a, b);
  return static_cast<double>(t.agree) / static_cast<double>(t.total);
}

inline double rand_index(const LabelMap& a, const LabelMap& b) {
  if (a.width != b.width || a.height != b.height) throw DimensionMismatch("label maps differ in size");
  return rand_index(a.labels, b.labels);
}

inline double rand_index(const EdgeMap& a, const EdgeMap& b) {
  if (a.width != b.width || a.height != b.height) throw DimensionMismatch("edge maps differ in size");
  return rand_index(detail::as_labels(a), detail::as_labels(b));
}

/// VI = H(A) + H(B) - 2 I(A;B). Natural log by default; pass log_base = 2
/// for bits.
inline double variation_of_information(const std::vector<int>& a, const std::vector<int>& b,
                                       double log_base = std::exp(1.0)) {
  if (a.size() != b.size()) throw DimensionMismatch("labelings differ in size");
  return std::max(0.0, detail::entropy_terms(a, b, log_base));
}

inline double variation_of_information(const LabelMap& a, const LabelMap& b,
                                       double log_base = std::exp(1.0)) {
  if (a.width != b.width || a.height != b.height) throw DimensionMismatch("label maps differ in size");
  return variation_of_information(a.labels, b.labels, log_base);
}

inline double variation_of_information(const EdgeMap& a, const EdgeMap& b,
                                       double log_base = std::exp(1.0)) {
  if (a.width != b.width || a.height != b.height) throw DimensionMismatch("edge maps differ in size");
  return variation_of_information(detail::as_labels(a), detail::as_labels(b), log_base);
}

/// 3x3 Sobel gradient magnitude with replicate-padded borders; pixels whose
/// magnitude reaches `threshold` are edges.
inline EdgeMap sobel_baseline(const GrayImage& img, double threshold) {
  EdgeMap edges(img.width, img.height);
  auto sample = [&](int x, int y) {
    x = std::clamp(x, 0, img.width - 1);
    y = std::clamp(y, 0, img.height - 1);
    return static_cast<double>(img.at(x, y));
  };
  for (int y = 0; y < img.height; ++y) {
    for (int x = 0; x < img.width; ++x) {
      const double gx = -sample(x - 1, y - 1) + sample(x + 1, y - 1)
                        - 2.0 * sample(x - 1, y) + 2.0 * sample(x + 1, y)
                        - sample(x - 1, y + 1) + sample(x + 1, y + 1);
      const double gy = -sample(x - 1, y - 1) - 2.0 * sample(x, y - 1) - sample(x + 1, y - 1)
                        + sample(x - 1, y + 1) + 2.0 * sample(x, y + 1) + sample(x + 1, y + 1);
      edges.set(x, y, std::sqrt(gx * gx + gy * gy) >= threshold);
    }
  }
  return edges;
}

/// All three metrics for a candidate edge map against a reference.
inline MetricReport evaluate_edges(const EdgeMap& candidate, const EdgeMap& reference,
                                   double alpha = kPrattAlpha,
                                   double log_base = std::exp(1.0)) {
  MetricReport r;
  r.candidate_edges = candidate.count();
  r.reference_edges = reference.count();
  r.figure_of_merit = figure_of_merit(candidate, reference, alpha);
  const auto a = detail::as_labels(candidate);
  const auto b = detail::as_labels(reference);
  const auto tally = detail::pair_tally(a, b);
  r.pairs_agree = tally.agree;
  r.pairs_total = tally.total;
  r.rand_index = rand_index(a, b);
  r.variation_of_information = variation_of_information(a, b, log_base);
  return r;
}

}  // namespace mbfo
