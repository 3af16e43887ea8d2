#pragma once

#include <span>

#include "mwk/types.hpp"

namespace mwk::theory {

/// ((1/m) sum v^r)^(1/r) for r != 0 and strictly positive values.
/// Switches to log-domain evaluation for |r| > 50 or a dynamic range above 1e6.
double power_mean(std::span<const double> values, double r);

/// (prod v)^(1/m), evaluated as exp(mean(log v)).
double geometric_mean(std::span<const double> values);

/// W_p written through dispersions only:
/// sum_l 1 / (sum_v D_lv^(-1/(p-1)))^(p-1).
/// A row holding a zero dispersion contributes 0.
double objective_via_dispersions(const DispersionMatrix& dispersions, double p);

/// W_p = m^(1-p) * sum_l M_r(D_l.) with r = -1/(p-1).
double objective_via_power_means(const DispersionMatrix& dispersions, double p);

/// W_p evaluated directly as sum_l sum_v w_lv^p D_lv for the given weights.
double objective_with_weights(const DispersionMatrix& dispersions, const Matrix& weights, double p);

/// lower = m^(1-p) sum_l min_v D_lv, upper = m^(1-p) sum_l geomean(D_l.).
BoundsResult objective_bounds(const DispersionMatrix& dispersions, double p);

/// (objective - lower) / (upper - lower), 0 when the bounds coincide.
/// Values within 1e-9 * upper outside the interval are clamped; anything
/// further out throws Error(BoundViolation).
double normalised_objective(double objective, const BoundsResult& bounds);

}  // namespace mwk::theory
