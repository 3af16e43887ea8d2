#include "mwk/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mwk/error.hpp"
#include "mwk/types.hpp"
#include "numeric.hpp"

namespace mwk {

double weighted_minkowski_distance(std::span<const double> x, std::span<const double> z,
                                   std::span<const double> w, double p) {
  if (x.size() != z.size() || x.size() != w.size()) {
    throw Error(Errc::DimensionMismatch, "distance operands have lengths " +
                                             std::to_string(x.size()) + ", " +
                                             std::to_string(z.size()) + ", " +
                                             std::to_string(w.size()));
  }
  double total = 0.0;
  for (std::size_t v = 0; v < x.size(); ++v) {
    if (w[v] == 0.0) continue;
    total += detail::abs_pow(w[v], p) * detail::abs_pow(x[v] - z[v], p);
  }
  return total;
}

double center_objective(std::span<const double> samples, double p, double z) {
  double total = 0.0;
  for (double s : samples) total += detail::abs_pow(s - z, p);
  return total;
}

double center_gradient(std::span<const double> samples, double p, double z) {
  const double q = p - 1.0;
  double total = 0.0;
  for (double s : samples) {
    const double diff = z - s;
    if (diff > 0.0) {
      total += std::pow(diff, q);
    } else if (diff < 0.0) {
      total -= std::pow(-diff, q);
    }
  }
  return p * total;
}

CenterSolveResult minkowski_center(std::span<const double> samples, double p, double center_tol) {
  if (samples.empty()) throw Error(Errc::DimensionMismatch, "Minkowski centre of an empty sample");
  if (!(p > kMinExponent)) {
    throw Error(Errc::InvalidConfig, "Minkowski centre requires p > 1, got " + std::to_string(p));
  }
  if (!(center_tol > 0.0)) throw Error(Errc::InvalidConfig, "center_tol must be > 0");

  const auto [min_it, max_it] = std::minmax_element(samples.begin(), samples.end());
  double lo = *min_it;
  double hi = *max_it;

  CenterSolveResult result;
  if (p == 2.0) {
    double sum = 0.0;
    for (double s : samples) sum += s;
    result.z = std::clamp(sum / static_cast<double>(samples.size()), lo, hi);
    result.f_value = center_objective(samples, p, result.z);
    return result;
  }

  while (hi - lo > center_tol) {
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) break;  // bracket is down to adjacent doubles
    const double g = center_gradient(samples, p, mid);
    ++result.iterations;
    if (g > 0.0) {
      hi = mid;
    } else if (g < 0.0) {
      lo = mid;
    } else {
      lo = hi = mid;
    }
  }
  result.z = lo + 0.5 * (hi - lo);
  result.bracket_width = hi - lo;
  result.f_value = center_objective(samples, p, result.z);
  return result;
}

}  // namespace mwk
