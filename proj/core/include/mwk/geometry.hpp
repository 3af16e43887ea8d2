#pragma once

#include <cstddef>
#include <span>

namespace mwk {

/// sum_v w_v^p |x_v - z_v|^p. No outer root is taken.
/// Throws Error(DimensionMismatch) if the spans differ in length.
double weighted_minkowski_distance(std::span<const double> x, std::span<const double> z,
                                   std::span<const double> w, double p);

/// f_p(z) = sum_i |s_i - z|^p.
double center_objective(std::span<const double> samples, double p, double z);

/// f_p'(z) = sum_i p * sign(z - s_i) * |z - s_i|^(p-1).
double center_gradient(std::span<const double> samples, double p, double z);

struct CenterSolveResult {
  double z = 0.0;
  double f_value = 0.0;
  std::size_t iterations = 0;
  double bracket_width = 0.0;
};

/// Unique minimiser of f_p for p > 1. Bisects on the sign of f_p' over
/// [min(samples), max(samples)] until the bracket is no wider than
/// `center_tol`, and returns the bracket midpoint. p == 2 returns the mean.
CenterSolveResult minkowski_center(std::span<const double> samples, double p, double center_tol);

}  // namespace mwk
