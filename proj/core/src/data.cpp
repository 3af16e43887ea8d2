#include "mwk/data.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string_view>

#include <json.hpp>

#include "mwk/error.hpp"
#include "mwk/rng.hpp"

namespace mwk::data {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_cells(std::string_view line) {
  std::vector<std::string_view> cells;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    cells.push_back(trim(line.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return cells;
}

bool parse_number(std::string_view cell, double& out) {
  if (cell.empty()) return false;
  if (cell.front() == '+') cell.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), out);
  return ec == std::errc() && ptr == cell.data() + cell.size();
}

bool parse_label(std::string_view cell, Label& out) {
  if (cell.empty()) return false;
  if (cell.front() == '+') cell.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), out);
  return ec == std::errc() && ptr == cell.data() + cell.size();
}

Error parse_error(std::size_t line, std::size_t col, const std::string& what) {
  return Error::at_cell(Errc::ParseError, line, col, what);
}

}  // namespace

void SyntheticSpec::validate() const {
  if (k_true < 1) throw Error(Errc::InvalidSpec, "k_true must be >= 1");
  if (n_points < k_true) throw Error(Errc::InvalidSpec, "n_points must be >= k_true");
  if (n_informative < 1) throw Error(Errc::InvalidSpec, "n_informative must be >= 1");
  if (!(cluster_std >= 0.0) || !std::isfinite(cluster_std)) {
    throw Error(Errc::InvalidSpec, "cluster_std must be finite and >= 0");
  }
  if (!std::isfinite(center_min) || !std::isfinite(center_max) || center_min > center_max) {
    throw Error(Errc::InvalidSpec, "center box must be a finite interval with min <= max");
  }
}

SyntheticData generate(const SyntheticSpec& spec) {
  spec.validate();
  const std::size_t m = spec.n_informative + spec.n_noise;

  SyntheticData out;
  out.true_centers = Matrix(spec.k_true, spec.n_informative);
  Rng centers(spec.seed, static_cast<std::uint64_t>(Stream::Centers));
  for (double& c : out.true_centers.flat()) c = centers.uniform(spec.center_min, spec.center_max);

  std::vector<Label> labels(spec.n_points);
  for (std::size_t i = 0; i < spec.n_points; ++i) {
    labels[i] = static_cast<Label>((i * spec.k_true) / spec.n_points);
  }

  Matrix values(spec.n_points, m);
  Rng informative(spec.seed, static_cast<std::uint64_t>(Stream::Informative));
  for (std::size_t i = 0; i < spec.n_points; ++i) {
    const auto center = out.true_centers.row(static_cast<std::size_t>(labels[i]));
    for (std::size_t v = 0; v < spec.n_informative; ++v) {
      values(i, v) = center[v] + spec.cluster_std * informative.normal();
    }
  }
  Rng noise(spec.seed, static_cast<std::uint64_t>(Stream::Noise));
  for (std::size_t i = 0; i < spec.n_points; ++i) {
    for (std::size_t v = spec.n_informative; v < m; ++v) values(i, v) = noise.uniform01();
  }

  std::vector<std::string> names;
  names.reserve(m);
  for (std::size_t v = 0; v < spec.n_informative; ++v) names.push_back("inf" + std::to_string(v));
  for (std::size_t v = 0; v < spec.n_noise; ++v) names.push_back("noise" + std::to_string(v));

  out.dataset = validate_dataset(std::move(values), std::move(names), std::move(labels));
  return out;
}

NormalisedDataset range_normalise(const Dataset& data) {
  NormalisedDataset out{data, {}};
  out.stats.reserve(data.m());
  const double n = static_cast<double>(data.n());
  for (std::size_t v = 0; v < data.m(); ++v) {
    FeatureStats s;
    s.feature = data.feature_names.empty() ? "f" + std::to_string(v) : data.feature_names[v];
    s.min = s.max = data.values(0, v);
    double sum = 0.0;
    for (std::size_t i = 0; i < data.n(); ++i) {
      const double x = data.values(i, v);
      sum += x;
      s.min = std::min(s.min, x);
      s.max = std::max(s.max, x);
    }
    s.mean = sum / n;
    const double range = s.max - s.min;
    if (!(range > 0.0)) throw Error::at_index(Errc::ConstantFeature, v, "feature has zero range");
    for (std::size_t i = 0; i < data.n(); ++i) {
      out.dataset.values(i, v) = (data.values(i, v) - s.mean) / range;
    }
    out.stats.push_back(std::move(s));
  }
  return out;
}

std::string stats_to_json(std::span<const FeatureStats> stats) {
  nlohmann::json doc = nlohmann::json::array();
  for (const auto& s : stats) {
    doc.push_back({{"feature", s.feature}, {"mean", s.mean}, {"min", s.min}, {"max", s.max}});
  }
  return doc.dump(2) + "\n";
}

Dataset parse_csv(const std::string& text, bool has_labels) {
  std::vector<std::string> names;
  std::vector<std::vector<double>> rows;
  std::vector<Label> labels;
  std::size_t width = 0;  // cells per line, including the label column
  bool first = true;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto eol = text.find('\n', pos);
    const std::string_view line =
        std::string_view(text).substr(pos, eol == std::string::npos ? std::string::npos : eol - pos);
    pos = eol == std::string::npos ? text.size() + 1 : eol + 1;
    ++line_no;
    if (trim(line).empty()) continue;

    const auto cells = split_cells(line);
    if (first) {
      first = false;
      width = cells.size();
      if (has_labels && width < 2) {
        throw parse_error(line_no, 1, "expected at least one feature column and a label column");
      }
      const bool any_numeric = std::any_of(cells.begin(), cells.end(), [](std::string_view c) {
        double ignored;
        return parse_number(c, ignored);
      });
      if (!any_numeric) {
        const std::size_t n_features = has_labels ? width - 1 : width;
        for (std::size_t c = 0; c < n_features; ++c) names.emplace_back(cells[c]);
        continue;
      }
    }
    if (cells.size() != width) {
      throw parse_error(line_no, std::min(cells.size(), width) + 1,
                        "expected " + std::to_string(width) + " cells, found " +
                            std::to_string(cells.size()));
    }
    const std::size_t n_features = has_labels ? width - 1 : width;
    std::vector<double> row(n_features);
    for (std::size_t c = 0; c < n_features; ++c) {
      if (!parse_number(cells[c], row[c])) {
        throw parse_error(line_no, c + 1, "not a number: '" + std::string(cells[c]) + "'");
      }
    }
    if (has_labels) {
      Label label = 0;
      if (!parse_label(cells.back(), label)) {
        throw parse_error(line_no, width, "not an integer label: '" + std::string(cells.back()) + "'");
      }
      labels.push_back(label);
    }
    rows.push_back(std::move(row));
  }

  std::optional<std::vector<Label>> maybe_labels;
  if (has_labels) maybe_labels = std::move(labels);
  return validate_dataset(rows, std::move(names), std::move(maybe_labels));
}

Dataset load_csv(const std::filesystem::path& path, bool has_labels) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::IoError, "cannot open '" + path.string() + "' for reading");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw Error(Errc::IoError, "failed reading '" + path.string() + "'");
  return parse_csv(buffer.str(), has_labels);
}

std::string format_double(double value) {
  char buf[32];
  const int len = std::snprintf(buf, sizeof buf, "%.17g", value);
  return std::string(buf, static_cast<std::size_t>(len));
}

std::string format_csv(const Dataset& data) {
  std::string out;
  const bool labelled = data.labels.has_value();
  if (!data.feature_names.empty()) {
    for (std::size_t v = 0; v < data.feature_names.size(); ++v) {
      if (v) out += ',';
      out += data.feature_names[v];
    }
    if (labelled) out += ",label";
    out += '\n';
  }
  for (std::size_t i = 0; i < data.n(); ++i) {
    for (std::size_t v = 0; v < data.m(); ++v) {
      if (v) out += ',';
      out += format_double(data.values(i, v));
    }
    if (labelled) {
      out += ',';
      out += std::to_string((*data.labels)[i]);
    }
    out += '\n';
  }
  return out;
}

void save_csv(const Dataset& data, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(Errc::IoError, "cannot open '" + path.string() + "' for writing");
  const std::string text = format_csv(data);
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw Error(Errc::IoError, "failed writing '" + path.string() + "'");
}

}  // namespace mwk::data
