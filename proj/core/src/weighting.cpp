#include "mwk/weighting.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "mwk/error.hpp"

namespace mwk {

namespace {

void require_exponent(double p) {
  if (!(std::isfinite(p) && p > kMinExponent)) {
    throw Error(Errc::InvalidConfig, "weights require p > 1, got " + std::to_string(p));
  }
}

}  // namespace

void update_weight_row(std::span<const double> d, double p, std::span<double> out) {
  require_exponent(p);
  if (d.size() != out.size() || d.empty()) {
    throw Error(Errc::DimensionMismatch, "weight row and dispersion row differ in length");
  }
  const std::size_t m = d.size();

  std::size_t zeros = 0;
  for (std::size_t v = 0; v < m; ++v) {
    if (!(d[v] >= 0.0) || !std::isfinite(d[v])) {
      throw Error::at_index(Errc::NonpositiveDispersion, v, "dispersion must be finite and >= 0");
    }
    if (d[v] == 0.0) ++zeros;
  }
  if (zeros > 0) {
    const double share = 1.0 / static_cast<double>(zeros);
    for (std::size_t v = 0; v < m; ++v) out[v] = d[v] == 0.0 ? share : 0.0;
    return;
  }

  // w_v proportional to exp(-log(D_v) / (p-1)), shifted by the largest
  // exponent so the biggest term is exactly 1.
  const double inv = 1.0 / (p - 1.0);
  double top = -std::numeric_limits<double>::infinity();
  for (std::size_t v = 0; v < m; ++v) {
    out[v] = -inv * std::log(d[v]);
    top = std::max(top, out[v]);
  }
  double sum = 0.0;
  for (std::size_t v = 0; v < m; ++v) {
    out[v] = std::exp(out[v] - top);
    sum += out[v];
  }
  for (std::size_t v = 0; v < m; ++v) out[v] /= sum;
}

Matrix update_weights(const DispersionMatrix& dispersions, double p) {
  Matrix weights(dispersions.k(), dispersions.m());
  for (std::size_t l = 0; l < dispersions.k(); ++l) {
    update_weight_row(dispersions.d.row(l), p, weights.row(l));
  }
  return weights;
}

double weight_ratio(double d_u, double d_v, double p) {
  require_exponent(p);
  if (!(d_u > 0.0) || !(d_v > 0.0)) {
    throw Error(Errc::NonpositiveDispersion, "weight ratio needs strictly positive dispersions");
  }
  return std::pow(d_v / d_u, 1.0 / (p - 1.0));
}

double pairwise_suppression_bound(double c, double p) {
  require_exponent(p);
  if (!(c > 1.0)) throw Error(Errc::InvalidC, "suppression factor C must exceed 1");
  return std::pow(c, -1.0 / (p - 1.0));
}

double global_suppression_bound(double c, std::size_t m, double p) {
  require_exponent(p);
  if (!(c > 1.0)) throw Error(Errc::InvalidC, "suppression factor C must exceed 1");
  if (m < 2) throw Error(Errc::InvalidM, "global suppression needs m >= 2");
  return 1.0 / (1.0 + static_cast<double>(m - 1) * std::pow(c, 1.0 / (p - 1.0)));
}

}  // namespace mwk
