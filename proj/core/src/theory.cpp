#include "mwk/theory.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "mwk/error.hpp"

namespace mwk::theory {

namespace {

constexpr double kLogDomainOrder = 50.0;
constexpr double kLogDomainRange = 1e6;

void require_positive(std::span<const double> values) {
  if (values.empty()) throw Error(Errc::DimensionMismatch, "mean of an empty list");
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!(values[i] > 0.0) || !std::isfinite(values[i])) {
      throw Error::at_index(Errc::NonpositiveValue, i, "value must be finite and > 0");
    }
  }
}

void require_exponent(double p) {
  if (!(std::isfinite(p) && p > kMinExponent)) {
    throw Error(Errc::InvalidConfig, "objective requires p > 1, got " + std::to_string(p));
  }
}

// log(sum_i exp(scale * log(values_i)))
double log_sum_pow(std::span<const double> values, double scale) {
  double top = -std::numeric_limits<double>::infinity();
  for (double v : values) top = std::max(top, scale * std::log(v));
  double sum = 0.0;
  for (double v : values) sum += std::exp(scale * std::log(v) - top);
  return top + std::log(sum);
}

bool wide_range(std::span<const double> values) {
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  return *hi > kLogDomainRange * *lo;
}

bool has_zero(std::span<const double> row) {
  return std::any_of(row.begin(), row.end(), [](double d) { return d == 0.0; });
}

void require_dispersions(const DispersionMatrix& dispersions) {
  if (dispersions.k() == 0 || dispersions.m() == 0) {
    throw Error(Errc::EmptyMatrix, "dispersion matrix is empty");
  }
  for (double d : dispersions.d.flat()) {
    if (!(d >= 0.0) || !std::isfinite(d)) {
      throw Error(Errc::NonpositiveDispersion, "dispersion must be finite and >= 0");
    }
  }
}

}  // namespace

double power_mean(std::span<const double> values, double r) {
  require_positive(values);
  if (r == 0.0 || !std::isfinite(r)) {
    throw Error(Errc::InvalidConfig, "power mean order must be finite and nonzero");
  }
  const double m = static_cast<double>(values.size());
  if (std::abs(r) <= kLogDomainOrder && !wide_range(values)) {
    double sum = 0.0;
    for (double v : values) sum += std::pow(v, r);
    const double direct = std::pow(sum / m, 1.0 / r);
    if (std::isfinite(direct) && direct > 0.0) return direct;
  }
  return std::exp((log_sum_pow(values, r) - std::log(m)) / r);
}

double geometric_mean(std::span<const double> values) {
  require_positive(values);
  double log_sum = 0.0;
  for (double v : values) log_sum += std::log(v);
  return std::exp(log_sum / static_cast<double>(values.size()));
}

double objective_via_dispersions(const DispersionMatrix& dispersions, double p) {
  require_exponent(p);
  require_dispersions(dispersions);
  const double inv = 1.0 / (p - 1.0);
  double total = 0.0;
  for (std::size_t l = 0; l < dispersions.k(); ++l) {
    const auto row = dispersions.d.row(l);
    if (has_zero(row)) continue;
    double contribution = std::numeric_limits<double>::quiet_NaN();
    if (inv <= kLogDomainOrder && !wide_range(row)) {
      double sum = 0.0;
      for (double d : row) sum += 1.0 / std::pow(d, inv);
      contribution = 1.0 / std::pow(sum, p - 1.0);
    }
    if (!std::isfinite(contribution) || contribution <= 0.0) {
      contribution = std::exp(-(p - 1.0) * log_sum_pow(row, -inv));
    }
    total += contribution;
  }
  return total;
}

double objective_via_power_means(const DispersionMatrix& dispersions, double p) {
  require_exponent(p);
  require_dispersions(dispersions);
  const double r = -1.0 / (p - 1.0);
  const double prefactor = std::exp((1.0 - p) * std::log(static_cast<double>(dispersions.m())));
  double sum = 0.0;
  for (std::size_t l = 0; l < dispersions.k(); ++l) {
    const auto row = dispersions.d.row(l);
    if (has_zero(row)) continue;
    sum += power_mean(row, r);
  }
  return prefactor * sum;
}

double objective_with_weights(const DispersionMatrix& dispersions, const Matrix& weights,
                              double p) {
  if (weights.rows() != dispersions.k() || weights.cols() != dispersions.m()) {
    throw Error(Errc::DimensionMismatch, "weights and dispersions differ in shape");
  }
  double total = 0.0;
  for (std::size_t l = 0; l < dispersions.k(); ++l) {
    for (std::size_t v = 0; v < dispersions.m(); ++v) {
      const double w = weights(l, v);
      if (w == 0.0) continue;
      total += std::pow(w, p) * dispersions.d(l, v);
    }
  }
  return total;
}

BoundsResult objective_bounds(const DispersionMatrix& dispersions, double p) {
  require_exponent(p);
  require_dispersions(dispersions);
  BoundsResult out;
  out.prefactor = std::exp((1.0 - p) * std::log(static_cast<double>(dispersions.m())));
  out.per_cluster_min.reserve(dispersions.k());
  out.per_cluster_geomean.reserve(dispersions.k());
  double min_sum = 0.0;
  double geo_sum = 0.0;
  for (std::size_t l = 0; l < dispersions.k(); ++l) {
    const auto row = dispersions.d.row(l);
    const double lo = *std::min_element(row.begin(), row.end());
    const double geo = has_zero(row) ? 0.0 : geometric_mean(row);
    out.per_cluster_min.push_back(lo);
    out.per_cluster_geomean.push_back(geo);
    min_sum += lo;
    geo_sum += geo;
  }
  out.lower = out.prefactor * min_sum;
  out.upper = out.prefactor * geo_sum;
  return out;
}

double normalised_objective(double objective, const BoundsResult& bounds) {
  const double eps = 1e-9 * std::abs(bounds.upper);
  if (!(objective >= bounds.lower - eps) || !(objective <= bounds.upper + eps)) {
    throw Error(Errc::BoundViolation, "objective " + std::to_string(objective) +
                                          " outside [" + std::to_string(bounds.lower) + ", " +
                                          std::to_string(bounds.upper) + "]");
  }
  const double span = bounds.upper - bounds.lower;
  if (!(span > 0.0)) return 0.0;
  return std::clamp((objective - bounds.lower) / span, 0.0, 1.0);
}

}  // namespace mwk::theory
