#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <random>
#include <vector>

#include "mbfo/errors.hpp"

namespace mbfo {

/// All stochastic draws flow through one mt19937_64 stream keyed by
/// BfoConfig::seed, so runs are bit-reproducible.
using Rng = std::mt19937_64;

struct BfoConfig {
  int population = 20;        // S, must be even and >= 2
  int chemotactic_steps = 50; // Nc
  int max_swim_length = 4;    // Ns
  int reproduction_steps = 4; // Nre
  int dispersal_events = 2;   // Ned
  double dispersal_prob = 0.25;  // Ped
  double step_size = 2.0;        // C(i), shared by all bacteria
  double d_attract = 0.1;
  double w_attract = 0.2;
  double h_repellant = 0.1;
  double w_repellant = 10.0;
  std::uint64_t seed = 0;

  void validate() const {
    if (population < 2 || population % 2 != 0) throw InvalidConfig("population size must be even and >= 2");
    if (chemotactic_steps < 1) throw InvalidConfig("chemotactic steps must be >= 1");
    if (max_swim_length < 1) throw InvalidConfig("swim length must be >= 1");
    if (reproduction_steps < 1) throw InvalidConfig("reproduction steps must be >= 1");
    if (dispersal_events < 1) throw InvalidConfig("dispersal events must be >= 1");
    if (dispersal_prob < 0.0 || dispersal_prob > 1.0) throw InvalidConfig("dispersal probability must be in [0, 1]");
    if (step_size <= 0.0) throw InvalidConfig("step size must be > 0");
  }
};

/// Candidate positions plus the optimizer's bookkeeping. Health accumulates
/// the per-step swim cost J_sw under the internal minimization convention
/// (lower = healthier).
struct BacterialPopulation {
  std::vector<std::vector<double>> positions;
  std::vector<double> health;
  std::vector<double> best_position;  // global best X_gn
  double best_cost = std::numeric_limits<double>::infinity();  // minimized
  double lo = 0.0, hi = 0.0;

  int size() const { return static_cast<int>(positions.size()); }
};

struct OptimizeResult {
  std::vector<double> best_position;
  double best_value = 0.0;           // maximization value, -best_cost
  std::vector<double> trace;         // best-so-far value per chemotactic step
};

/// Maximization objective over a real position vector.
using Objective = std::function<double(const std::vector<double>&)>;

/// Unit-length tumble direction: raw components uniform in [-1, 1],
/// normalized to Euclidean norm 1. The measure-zero all-zero draw is
/// re-sampled.
inline std::vector<double> tumble_direction(Rng& rng, int dim) {
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  std::vector<double> d(dim);
  double norm2 = 0.0;
  do {
    norm2 = 0.0;
    for (auto& v : d) {
      v = uni(rng);
      norm2 += v * v;
    }
  } while (norm2 == 0.0);
  const double inv = 1.0 / std::sqrt(norm2);
  for (auto& v : d) v *= inv;
  return d;
}

/// x + c * dir, clamped per coordinate to [lo, hi].
inline std::vector<double> move(const std::vector<double>& x, double c,
                                const std::vector<double>& dir, double lo, double hi) {
  std::vector<double> out(x.size());
  for (std::size_t n = 0; n < x.size(); ++n)
    out[n] = std::clamp(x[n] + c * dir[n], lo, hi);
  return out;
}

/// Swarm attractant/repellant cost against the global best bacterium:
/// -d_a exp(-w_a D) + h_r exp(-w_r D), D = squared distance to the best.
inline double swarm_cost(const std::vector<double>& x, const std::vector<double>& x_best,
                         const BfoConfig& cfg) {
  double d2 = 0.0;
  for (std::size_t n = 0; n < x.size(); ++n) {
    const double diff = x[n] - x_best[n];
    d2 += diff * diff;
  }
  return -cfg.d_attract * std::exp(-cfg.w_attract * d2) +
         cfg.h_repellant * std::exp(-cfg.w_repellant * d2);
}

/// Health over one generation: the plain sum of per-step swim costs.
inline double health(const std::vector<double>& per_step_costs) {
  return std::accumulate(per_step_costs.begin(), per_step_costs.end(), 0.0);
}

/// The S/2 bacteria with highest accumulated cost die; each survivor splits
/// in place. Ties break by index (stable sort). Health resets to zero.
inline void reproduce(BacterialPopulation& pop) {
  const int s = pop.size();
  if (s % 2 != 0) throw InvalidConfig("population size must be even");
  std::vector<int> order(s);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return pop.health[a] < pop.health[b]; });

  std::vector<std::vector<double>> next;
  next.reserve(s);
  for (int r = 0; r < s / 2; ++r) {
    next.push_back(pop.positions[order[r]]);
    next.push_back(pop.positions[order[r]]);
  }
  pop.positions = std::move(next);
  std::fill(pop.health.begin(), pop.health.end(), 0.0);
}

/// Each bacterium independently relocates uniformly within bounds with
/// probability Ped. The global best record is retained.
inline void eliminate_disperse(BacterialPopulation& pop, Rng& rng, const BfoConfig& cfg) {
  std::uniform_real_distribution<double> uni01(0.0, 1.0);
  std::uniform_real_distribution<double> box(pop.lo, pop.hi);
  for (auto& x : pop.positions) {
    if (uni01(rng) < cfg.dispersal_prob) {
      for (auto& v : x) v = box(rng);
    }
  }
}

/// Modified bacterial foraging optimization: chemotaxis with swim, swarming
/// against the global best bacterium, reproduction, elimination-dispersal.
/// Maximizes `objective`; internally minimizes its negation so the swim test
/// reads "improved" as "cost decreased".
inline OptimizeResult optimize(const Objective& objective, int dim, double lo, double hi,
                               const BfoConfig& cfg) {
  cfg.validate();
  if (!(lo < hi)) throw InvalidConfig("bounds must satisfy lo < hi");
  if (dim < 1) throw InvalidConfig("dimension must be >= 1");

  Rng rng(cfg.seed);
  auto cost = [&](const std::vector<double>& x) { return -objective(x); };

  BacterialPopulation pop;
  pop.lo = lo;
  pop.hi = hi;
  pop.health.assign(cfg.population, 0.0);
  std::uniform_real_distribution<double> box(lo, hi);
  for (int i = 0; i < cfg.population; ++i) {
    std::vector<double> x(dim);
    for (auto& v : x) v = box(rng);
    pop.positions.push_back(std::move(x));
  }

  auto note_best = [&](const std::vector<double>& x, double c) {
    if (c < pop.best_cost) {
      pop.best_cost = c;
      pop.best_position = x;
    }
  };

  OptimizeResult result;
  for (int ell = 0; ell < cfg.dispersal_events; ++ell) {
    for (int k = 0; k < cfg.reproduction_steps; ++k) {
      for (int j = 0; j < cfg.chemotactic_steps; ++j) {
        for (int i = 0; i < cfg.population; ++i) {
          auto& x = pop.positions[i];
          double c = cost(x);
          note_best(x, c);
          double j_sw = c + swarm_cost(x, pop.best_position, cfg);
          double j_last = j_sw;

          const auto dir = tumble_direction(rng, dim);
          x = move(x, cfg.step_size, dir, lo, hi);
          c = cost(x);
          note_best(x, c);
          j_sw = c + swarm_cost(x, pop.best_position, cfg);

          for (int swim = 0; swim < cfg.max_swim_length && j_sw < j_last; ++swim) {
            j_last = j_sw;
            x = move(x, cfg.step_size, dir, lo, hi);
            c = cost(x);
            note_best(x, c);
            j_sw = c + swarm_cost(x, pop.best_position, cfg);
          }
          pop.health[i] += std::min(j_sw, j_last);
        }
        result.trace.push_back(-pop.best_cost);
      }
      reproduce(pop);
    }
    eliminate_disperse(pop, rng, cfg);
  }

  result.best_position = pop.best_position;
  result.best_value = -pop.best_cost;
  return result;
}

}  // namespace mbfo
