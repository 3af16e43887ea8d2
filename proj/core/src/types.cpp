#include "mwk/types.hpp"

#include <cmath>
#include <string>

#include "mwk/error.hpp"
#include "numeric.hpp"

namespace mwk {

namespace {

void check_side_data(const Matrix& values, const std::vector<std::string>& names,
                     const std::optional<std::vector<Label>>& labels) {
  if (!names.empty() && names.size() != values.cols()) {
    throw Error(Errc::DimensionMismatch, "expected " + std::to_string(values.cols()) +
                                             " feature names, got " + std::to_string(names.size()));
  }
  if (labels && labels->size() != values.rows()) {
    throw Error(Errc::DimensionMismatch, "expected " + std::to_string(values.rows()) +
                                             " labels, got " + std::to_string(labels->size()));
  }
}

}  // namespace

Dataset validate_dataset(const std::vector<std::vector<double>>& raw,
                         std::vector<std::string> feature_names,
                         std::optional<std::vector<Label>> labels) {
  if (raw.empty() || raw.front().empty()) throw Error(Errc::EmptyMatrix, "dataset has no cells");
  const std::size_t m = raw.front().size();
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (raw[i].size() != m) {
      throw Error::at_index(Errc::RaggedRows, i,
                            "row has " + std::to_string(raw[i].size()) + " values, expected " +
                                std::to_string(m));
    }
  }
  Matrix values(raw.size(), m);
  for (std::size_t i = 0; i < raw.size(); ++i) {
    for (std::size_t v = 0; v < m; ++v) values(i, v) = raw[i][v];
  }
  return validate_dataset(std::move(values), std::move(feature_names), std::move(labels));
}

Dataset validate_dataset(Matrix values, std::vector<std::string> feature_names,
                         std::optional<std::vector<Label>> labels) {
  if (values.rows() == 0 || values.cols() == 0) {
    throw Error(Errc::EmptyMatrix, "dataset has no cells");
  }
  for (std::size_t i = 0; i < values.rows(); ++i) {
    for (std::size_t v = 0; v < values.cols(); ++v) {
      if (!std::isfinite(values(i, v))) {
        throw Error::at_cell(Errc::NonFinite, i, v, "value is not finite");
      }
    }
  }
  check_side_data(values, feature_names, labels);
  return Dataset{std::move(values), std::move(feature_names), std::move(labels)};
}

void MwkConfig::validate(std::size_t n_points) const {
  if (!(std::isfinite(p) && p > kMinExponent)) {
    throw Error(Errc::InvalidConfig,
                "Minkowski exponent must satisfy p > 1, got p = " + std::to_string(p));
  }
  if (k < 1 || k > n_points) {
    throw Error(Errc::InvalidConfig, "cluster count must satisfy 1 <= k <= n (k = " +
                                         std::to_string(k) + ", n = " + std::to_string(n_points) +
                                         ")");
  }
  if (!(tol_objective >= 0.0)) throw Error(Errc::InvalidConfig, "tol_objective must be >= 0");
  if (max_iter < 1) throw Error(Errc::InvalidConfig, "max_iter must be >= 1");
  if (!(center_tol > 0.0)) throw Error(Errc::InvalidConfig, "center_tol must be > 0");
  if (restarts < 1) throw Error(Errc::InvalidConfig, "restarts must be >= 1");
}

DispersionMatrix compute_dispersions(const Dataset& data, std::span<const std::size_t> assignments,
                                     const Matrix& centroids, double p) {
  if (assignments.size() != data.n() || centroids.cols() != data.m()) {
    throw Error(Errc::DimensionMismatch, "assignments/centroids do not match the dataset");
  }
  DispersionMatrix out{Matrix(centroids.rows(), data.m())};
  for (std::size_t i = 0; i < data.n(); ++i) {
    const std::size_t l = assignments[i];
    const auto x = data.values.row(i);
    const auto z = centroids.row(l);
    auto d = out.d.row(l);
    for (std::size_t v = 0; v < x.size(); ++v) d[v] += detail::abs_pow(x[v] - z[v], p);
  }
  return out;
}

}  // namespace mwk
