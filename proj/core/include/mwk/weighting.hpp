#pragma once

#include <cstddef>
#include <span>

#include "mwk/matrix.hpp"
#include "mwk/types.hpp"

namespace mwk {

/// Optimal per-cluster feature weights for fixed dispersions:
/// w_lv = D_lv^(-1/(p-1)) / sum_t D_lt^(-1/(p-1)).
///
/// Rows containing zero dispersions take the limit of this formula: the
/// j zero-dispersion features share weight 1/j and the rest get 0. An
/// all-zero row is uniform. Every row sums to 1.
Matrix update_weights(const DispersionMatrix& dispersions, double p);

/// Single-row form of update_weights. `out` must have the same length as `d`.
void update_weight_row(std::span<const double> d, double p, std::span<double> out);

/// w_u / w_v for dispersions d_u, d_v: (d_v / d_u)^(1/(p-1)).
double weight_ratio(double d_u, double d_v, double p);

/// If D_u >= C * D_v then w_u <= C^(-1/(p-1)) * w_v.
double pairwise_suppression_bound(double c, double p);

/// If D_u >= C * D_v for every v != u then w_u <= 1 / (1 + (m-1) C^(1/(p-1))).
double global_suppression_bound(double c, std::size_t m, double p);

}  // namespace mwk
