#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "mbfo/bfo.hpp"
#include "mbfo/image.hpp"
#include "mbfo/segment.hpp"

namespace mbfo {

/// Synthetic image with constructed ground truth, standing in for clinical
/// inputs in tests and the acceptance experiments.
struct SyntheticImage {
  GrayImage image;
  LabelMap truth;
  EdgeMap reference_edges;  // edges of the clean (noise-free) rendering
};

namespace detail {

inline std::uint8_t clamp_u8(double v) {
  return static_cast<std::uint8_t>(std::clamp(std::lround(v), 0l, 255l));
}

}  // namespace detail

/// Four nested elliptical regions with distinct mean intensities plus
/// optional additive Gaussian noise (clamped to [0, 255]). Ground truth
/// comes from the geometry; reference edges from the noiseless rendering.
inline SyntheticImage make_phantom(int width, int height, std::uint64_t seed,
                                   double noise_sigma = 0.0) {
  static constexpr std::uint8_t kMeans[4] = {40, 105, 170, 235};
  static constexpr double kRadii[3] = {0.42, 0.28, 0.13};  // fractions of min dim

  SyntheticImage s;
  s.truth = LabelMap(width, height);
  GrayImage clean(width, height);
  const double cx = (width - 1) / 2.0, cy = (height - 1) / 2.0;
  const double base = std::min(width, height);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      const double r = std::hypot(x - cx, y - cy);
      int label = 0;
      for (int k = 0; k < 3; ++k)
        if (r <= kRadii[k] * base) label = k + 1;
      s.truth.at(x, y) = label;
      clean.at(x, y) = kMeans[label];
    }
  }
  s.reference_edges = detect_edges(clean);

  s.image = clean;
  if (noise_sigma > 0.0) {
    Rng rng(seed);
    std::normal_distribution<double> noise(0.0, noise_sigma);
    for (auto& p : s.image.pixels) p = detail::clamp_u8(p + noise(rng));
  }
  return s;
}

/// Spatially random two-mode field: each pixel is drawn from one of two
/// Gaussian intensity modes. Truth labels the mode per pixel.
inline SyntheticImage make_bimodal_field(int width, int height, std::uint64_t seed,
                                         double mean_low = 70.0, double mean_high = 180.0,
                                         double sigma = 12.0) {
  SyntheticImage s;
  s.image = GrayImage(width, height);
  s.truth = LabelMap(width, height);
  Rng rng(seed);
  std::bernoulli_distribution mode(0.5);
  std::normal_distribution<double> noise(0.0, sigma);
  GrayImage clean(width, height);
  for (std::size_t i = 0; i < s.image.pixels.size(); ++i) {
    const int label = mode(rng) ? 1 : 0;
    s.truth.labels[i] = label;
    clean.pixels[i] = detail::clamp_u8(label ? mean_high : mean_low);
    s.image.pixels[i] = detail::clamp_u8((label ? mean_high : mean_low) + noise(rng));
  }
  s.reference_edges = detect_edges(clean);
  return s;
}

/// Seeded 256-bin Gaussian-mixture histogram with 2-5 modes, used as a
/// search-problem generator for optimizer experiments.
inline Histogram make_mixture_histogram(std::uint64_t seed) {
  Rng rng(seed);
  std::uniform_int_distribution<int> n_modes(2, 5);
  std::uniform_real_distribution<double> center(10.0, 245.0);
  std::uniform_real_distribution<double> width(4.0, 25.0);
  std::uniform_real_distribution<double> weight(0.5, 2.0);

  const int modes = n_modes(rng);
  std::vector<double> mu(modes), sigma(modes), w(modes);
  for (int k = 0; k < modes; ++k) {
    mu[k] = center(rng);
    sigma[k] = width(rng);
    w[k] = weight(rng);
  }
  Histogram h;
  for (int i = 0; i < kGrayLevels; ++i) {
    double density = 1e-4;  // small uniform floor
    for (int k = 0; k < modes; ++k) {
      const double z = (i - mu[k]) / sigma[k];
      density += w[k] * std::exp(-0.5 * z * z) / sigma[k];
    }
    h.counts[i] = static_cast<std::uint64_t>(std::lround(density * 10000.0));
    h.total += h.counts[i];
  }
  return h;
}

}  // namespace mbfo
