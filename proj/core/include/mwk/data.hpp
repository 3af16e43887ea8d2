#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "mwk/matrix.hpp"
#include "mwk/types.hpp"

namespace mwk::data {

/// Gaussian mixture with appended uniform noise features.
struct SyntheticSpec {
  std::size_t n_points = 1000;
  std::size_t n_informative = 4;
  std::size_t n_noise = 4;
  std::size_t k_true = 3;
  std::uint64_t seed = 1;
  double cluster_std = 1.0;
  double center_min = -2.0;
  double center_max = 2.0;

  /// Throws Error(InvalidSpec).
  void validate() const;
};

struct SyntheticData {
  Dataset dataset;
  Matrix true_centers;  // k_true x n_informative
};

/// Substreams of Rng(spec.seed, stream) used by generate().
enum class Stream : std::uint64_t { Centers = 0, Informative = 1, Noise = 2 };

/// Point i belongs to component (i * k_true) / n_points, so components are
/// contiguous and as balanced as possible. Informative columns come first
/// ("inf0", "inf1", ...), followed by U[0, 1] noise columns ("noise0", ...).
SyntheticData generate(const SyntheticSpec& spec);

struct FeatureStats {
  std::string feature;
  double mean = 0.0;
  double min = 0.0;
  double max = 0.0;
};

struct NormalisedDataset {
  Dataset dataset;
  std::vector<FeatureStats> stats;
};

/// x_iv <- (x_iv - mean_v) / (max_v - min_v). Throws Error(ConstantFeature)
/// for a feature whose range is zero.
NormalisedDataset range_normalise(const Dataset& data);

/// [{"feature": ..., "mean": ..., "min": ..., "max": ...}, ...]
std::string stats_to_json(std::span<const FeatureStats> stats);

/// Comma-separated, '.' decimal point, optional single header line. A first
/// line in which no cell parses as a number is treated as the header. With
/// `has_labels` the last column holds integer labels.
/// Throws Error(ParseError) with 1-based line / column, or Error(IoError).
Dataset load_csv(const std::filesystem::path& path, bool has_labels = false);
Dataset parse_csv(const std::string& text, bool has_labels = false);

/// Values are written with 17 significant digits. A header is written when
/// the dataset has feature names; labels go in a trailing "label" column.
void save_csv(const Dataset& data, const std::filesystem::path& path);
std::string format_csv(const Dataset& data);

/// Shortest-exact formatting shared by all writers: %.17g.
std::string format_double(double value);

}  // namespace mwk::data
