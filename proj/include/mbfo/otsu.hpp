#pragma once

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "mbfo/errors.hpp"
#include "mbfo/image.hpp"

namespace mbfo {

/// Strictly increasing threshold levels t_1 < ... < t_m, each in [1, 255].
/// Level t_k is the lower bound of class C_k; class C_k covers [t_k, t_{k+1}-1].
struct ThresholdSet {
  std::vector<int> levels;

  explicit ThresholdSet(std::vector<int> ls) : levels(std::move(ls)) {
    if (levels.empty() || levels.size() > 8)
      throw InvalidConfig("threshold count must be in [1, 8]");
    for (std::size_t i = 0; i < levels.size(); ++i) {
      if (levels[i] < 1 || levels[i] > kGrayLevels - 1)
        throw InvalidConfig("threshold out of [1, 255]");
      if (i > 0 && levels[i] <= levels[i - 1])
        throw InvalidConfig("thresholds must be strictly increasing");
    }
  }

  int count() const { return static_cast<int>(levels.size()); }
  bool operator==(const ThresholdSet&) const = default;
};

/// Per-class probabilities, means and variance terms for one threshold set.
struct ClassStats {
  std::vector<double> omega;    // class probabilities, sum to 1
  std::vector<double> mu;       // class means; 0 and meaningless when omega == 0
  std::vector<double> sigma2;   // omega_k * (mu_k - mu_T)^2, 0 for empty classes
  double mu_total = 0.0;
};

/// Between-class-variance evaluator over precomputed histogram prefix sums.
/// Accepts sorted threshold vectors with duplicates; a duplicated level makes
/// its class empty, contributing 0.
class OtsuObjective {
public:
  explicit OtsuObjective(const Histogram& hist) : cum_p_(kGrayLevels + 1, 0.0), cum_ip_(kGrayLevels + 1, 0.0) {
    for (int i = 0; i < kGrayLevels; ++i) {
      const double p = hist.probability(i);
      cum_p_[i + 1] = cum_p_[i] + p;
      cum_ip_[i + 1] = cum_ip_[i] + i * p;
    }
    mu_total_ = cum_ip_[kGrayLevels];
  }

  double mu_total() const { return mu_total_; }

  /// J = sum_k omega_k (mu_k - mu_T)^2 for class ranges [t_k, t_{k+1}-1],
  /// t_0 = 0, t_{m+1} = 256. `sorted_levels` must be non-decreasing.
  double evaluate_sorted(const std::vector<int>& sorted_levels) const {
    double j = 0.0;
    int lo = 0;
    for (std::size_t k = 0; k <= sorted_levels.size(); ++k) {
      const int hi = k < sorted_levels.size() ? sorted_levels[k] : kGrayLevels;
      j += class_term(lo, hi);
      lo = hi;
    }
    return j;
  }

  // Contribution of the class spanning levels [lo, hi).
  double class_term(int lo, int hi) const {
    const double w = cum_p_[hi] - cum_p_[lo];
    if (w <= 0.0) return 0.0;
    const double mu = (cum_ip_[hi] - cum_ip_[lo]) / w;
    const double d = mu - mu_total_;
    return w * d * d;
  }

  std::pair<double, double> class_omega_mu(int lo, int hi) const {
    const double w = cum_p_[hi] - cum_p_[lo];
    return {w, w > 0.0 ? (cum_ip_[hi] - cum_ip_[lo]) / w : 0.0};
  }

private:
  std::vector<double> cum_p_, cum_ip_;
  double mu_total_ = 0.0;
};

inline ClassStats class_stats(const Histogram& hist, const ThresholdSet& ts) {
  OtsuObjective obj(hist);
  ClassStats s;
  s.mu_total = obj.mu_total();
  int lo = 0;
  for (int k = 0; k <= ts.count(); ++k) {
    const int hi = k < ts.count() ? ts.levels[k] : kGrayLevels;
    auto [w, mu] = obj.class_omega_mu(lo, hi);
    s.omega.push_back(w);
    s.mu.push_back(mu);
    s.sigma2.push_back(obj.class_term(lo, hi));
    lo = hi;
  }
  return s;
}

inline double between_class_variance(const Histogram& hist, const ThresholdSet& ts) {
  return OtsuObjective(hist).evaluate_sorted(ts.levels);
}

/// Certifying oracle: the exact maximum of the objective over all strictly
/// increasing threshold vectors, lexicographically smallest on ties.
inline std::pair<ThresholdSet, double> exhaustive_search(const Histogram& hist, int m) {
  if (m < 1) throw InvalidConfig("m must be >= 1");
  if (m > 4) throw MTooLarge(m);
  OtsuObjective obj(hist);

  std::vector<int> current(m), best(m);
  double best_j = -1.0;
  // Depth-first over combinations in lexicographic order, accumulating class
  // terms on the way down; strict improvement keeps the lexicographically
  // smallest maximizer.
  auto recurse = [&](auto&& self, int depth, int prev, double partial) -> void {
    if (depth == m) {
      const double j = partial + obj.class_term(prev, kGrayLevels);
      if (j > best_j) {
        best_j = j;
        best = current;
      }
      return;
    }
    for (int t = prev + 1; t <= kGrayLevels - 1 - (m - 1 - depth); ++t) {
      current[depth] = t;
      self(self, depth + 1, t, partial + obj.class_term(prev, t));
    }
  };
  recurse(recurse, 0, 0, 0.0);
  return {ThresholdSet(best), best_j};
}

}  // namespace mbfo
