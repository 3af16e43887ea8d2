#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace mwk {

enum class Errc {
  NonFinite,
  EmptyMatrix,
  RaggedRows,
  DimensionMismatch,
  InvalidConfig,
  EmptyCluster,
  NonpositiveDispersion,
  InvalidC,
  InvalidM,
  NonpositiveValue,
  BoundViolation,
  InvalidSpec,
  ConstantFeature,
  ParseError,
  IoError,
};

/// Coarse grouping used to map errors onto process exit codes.
enum class ErrorClass { Usage, Io, Numeric };

std::string_view errc_name(Errc code) noexcept;
ErrorClass classify(Errc code) noexcept;

/// Every failure raised by the library. `row`/`col` locate the offending
/// cell or line for data errors; `index` carries a cluster or feature id.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message);

  static Error at_cell(Errc code, std::size_t row, std::size_t col, const std::string& message);
  static Error at_index(Errc code, std::size_t index, const std::string& message);

  Errc code() const noexcept { return code_; }
  std::optional<std::size_t> row() const noexcept { return row_; }
  std::optional<std::size_t> col() const noexcept { return col_; }
  std::optional<std::size_t> index() const noexcept { return index_; }

 private:
  Errc code_;
  std::optional<std::size_t> row_;
  std::optional<std::size_t> col_;
  std::optional<std::size_t> index_;
};

}  // namespace mwk
