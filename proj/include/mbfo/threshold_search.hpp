#pragma once

#include <algorithm>
#include <cmath>
#include <memory>
#include <vector>

#include "mbfo/bfo.hpp"
#include "mbfo/otsu.hpp"

namespace mbfo {

// Search box for threshold positions; 0 and 255 would create a-priori empty
// classes, so they are excluded.
inline constexpr double kThresholdLo = 1.0;
inline constexpr double kThresholdHi = 254.0;

/// Continuous position -> sorted integer levels in [1, 254]. Duplicates are
/// kept; they denote empty classes under the objective's empty-class rule.
inline std::vector<int> round_position(const std::vector<double>& x) {
  std::vector<int> levels(x.size());
  for (std::size_t n = 0; n < x.size(); ++n) {
    levels[n] = std::clamp(static_cast<int>(std::lround(x[n])),
                           static_cast<int>(kThresholdLo), static_cast<int>(kThresholdHi));
  }
  std::sort(levels.begin(), levels.end());
  return levels;
}

/// Between-class-variance objective over real positions, for the optimizer.
inline Objective make_otsu_objective(const Histogram& hist) {
  auto obj = std::make_shared<OtsuObjective>(hist);
  return [obj](const std::vector<double>& x) { return obj->evaluate_sorted(round_position(x)); };
}

struct ThresholdSearchResult {
  ThresholdSet thresholds;
  double objective;
  std::vector<double> trace;
};

/// Full threshold search: BFO over [1, 254]^m maximizing between-class
/// variance. The returned set is the rounded global-best position with
/// duplicate levels collapsed.
inline ThresholdSearchResult search_thresholds(const Histogram& hist, int m, const BfoConfig& cfg) {
  OptimizeResult r = optimize(make_otsu_objective(hist), m, kThresholdLo, kThresholdHi, cfg);
  std::vector<int> levels = round_position(r.best_position);
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
  return {ThresholdSet(std::move(levels)), r.best_value, std::move(r.trace)};
}

}  // namespace mbfo
