#pragma once

// Test-only reference computations. Nothing here calls into the solver or
// weighting code it is used to check.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numeric>
#include <random>
#include <span>
#include <vector>

#include "mwk/matrix.hpp"
#include "mwk/types.hpp"

namespace mwk::testing {

/// f_p(z) = sum |s - z|^p, written out independently of the library.
inline double brute_f(std::span<const double> samples, double p, double z) {
  double total = 0.0;
  for (double s : samples) total += std::pow(std::abs(s - z), p);
  return total;
}

/// Grid search for the minimiser of f_p over [lo, hi] ending at `step`.
/// f_p is strictly convex, so the argmin of each grid lies within one cell
/// of the true minimiser; each level rescans +/-2 cells of the previous
/// winner at a 100x finer step, which yields the same argmin a single dense
/// grid at `step` would.
inline double grid_search_min(std::span<const double> samples, double p, double lo, double hi,
                              double step = 1e-6) {
  double coarse = (hi - lo) / 1000.0;
  if (coarse < step) coarse = step;
  double a = lo;
  double b = hi;
  double best = lo;
  while (true) {
    double best_f = std::numeric_limits<double>::infinity();
    const auto cells = static_cast<std::size_t>(std::ceil((b - a) / coarse));
    for (std::size_t j = 0; j <= cells; ++j) {
      const double z = std::min(a + static_cast<double>(j) * coarse, b);
      const double f = brute_f(samples, p, z);
      if (f < best_f) {
        best_f = f;
        best = z;
      }
    }
    if (coarse <= step) return best;
    a = std::max(lo, best - 2.0 * coarse);
    b = std::min(hi, best + 2.0 * coarse);
    coarse = std::max(step, coarse / 100.0);
  }
}

/// Central finite difference of f_p.
inline double finite_difference(std::span<const double> samples, double p, double z,
                                double h = 1e-7) {
  return (brute_f(samples, p, z + h) - brute_f(samples, p, z - h)) / (2.0 * h);
}

/// D_lv recomputed with plain loops.
inline Matrix brute_dispersions(const Dataset& data, std::span<const std::size_t> assignments,
                                const Matrix& centroids, double p) {
  Matrix d(centroids.rows(), data.m(), 0.0);
  for (std::size_t i = 0; i < data.n(); ++i) {
    for (std::size_t v = 0; v < data.m(); ++v) {
      d(assignments[i], v) +=
          std::pow(std::abs(data.values(i, v) - centroids(assignments[i], v)), p);
    }
  }
  return d;
}

/// Weight formula in its double-sum form: w_v = 1 / sum_u (D_v / D_u)^(1/(p-1)).
inline std::vector<double> brute_weights(std::span<const double> d, double p) {
  std::vector<double> w(d.size());
  for (std::size_t v = 0; v < d.size(); ++v) {
    double denom = 0.0;
    for (std::size_t u = 0; u < d.size(); ++u) denom += std::pow(d[v] / d[u], 1.0 / (p - 1.0));
    w[v] = 1.0 / denom;
  }
  return w;
}

/// Fraction of points whose label matches the cluster under the best
/// one-to-one relabelling (exhaustive over permutations; small k only).
inline double label_agreement(std::span<const std::size_t> clusters, std::span<const Label> labels,
                              std::size_t k) {
  std::vector<std::size_t> perm(k);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  std::size_t best = 0;
  do {
    std::size_t hits = 0;
    for (std::size_t i = 0; i < clusters.size(); ++i) {
      hits += static_cast<Label>(perm[clusters[i]]) == labels[i];
    }
    best = std::max(best, hits);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return static_cast<double>(best) / static_cast<double>(clusters.size());
}

/// Two spherical 2-D Gaussian blobs whose centres are 10 sigma apart along
/// the diagonal, so both coordinates separate the blobs. (With the gap on one
/// axis only, the other axis is pure noise and splitting on it gives a lower
/// weighted objective than the planted partition.)
inline Dataset two_blobs(std::size_t per_blob, std::uint64_t seed, double sigma = 1.0) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> noise(0.0, sigma);
  const double offset = 5.0 * sigma / std::sqrt(2.0);
  Matrix values(2 * per_blob, 2);
  std::vector<Label> labels(2 * per_blob);
  for (std::size_t i = 0; i < 2 * per_blob; ++i) {
    const Label c = i < per_blob ? 0 : 1;
    const double centre = c == 0 ? -offset : offset;
    values(i, 0) = centre + noise(gen);
    values(i, 1) = centre + noise(gen);
    labels[i] = c;
  }
  return Dataset{std::move(values), {"x", "y"}, std::move(labels)};
}

inline Dataset random_dataset(std::mt19937_64& gen, std::size_t n, std::size_t m) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Matrix values(n, m);
  for (double& x : values.flat()) x = u(gen);
  return Dataset{std::move(values), {}, std::nullopt};
}

inline double log_uniform(std::mt19937_64& gen, double lo, double hi) {
  std::uniform_real_distribution<double> u(std::log(lo), std::log(hi));
  return std::exp(u(gen));
}

inline double relative_error(double a, double b) {
  const double scale = std::max({std::abs(a), std::abs(b), 1e-300});
  return std::abs(a - b) / scale;
}

}  // namespace mwk::testing
