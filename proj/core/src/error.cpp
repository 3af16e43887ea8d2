#include "mwk/error.hpp"

namespace mwk {

std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::NonFinite: return "NonFinite";
    case Errc::EmptyMatrix: return "EmptyMatrix";
    case Errc::RaggedRows: return "RaggedRows";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::InvalidConfig: return "InvalidConfig";
    case Errc::EmptyCluster: return "EmptyCluster";
    case Errc::NonpositiveDispersion: return "NonpositiveDispersion";
    case Errc::InvalidC: return "InvalidC";
    case Errc::InvalidM: return "InvalidM";
    case Errc::NonpositiveValue: return "NonpositiveValue";
    case Errc::BoundViolation: return "BoundViolation";
    case Errc::InvalidSpec: return "InvalidSpec";
    case Errc::ConstantFeature: return "ConstantFeature";
    case Errc::ParseError: return "ParseError";
    case Errc::IoError: return "IoError";
  }
  return "Unknown";
}

ErrorClass classify(Errc code) noexcept {
  switch (code) {
    case Errc::IoError:
    case Errc::ParseError:
      return ErrorClass::Io;
    case Errc::NonpositiveDispersion:
    case Errc::NonpositiveValue:
    case Errc::BoundViolation:
    case Errc::EmptyCluster:
      return ErrorClass::Numeric;
    default:
      return ErrorClass::Usage;
  }
}

Error::Error(Errc code, const std::string& message)
    : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

Error Error::at_cell(Errc code, std::size_t row, std::size_t col, const std::string& message) {
  Error e(code, message + " (row " + std::to_string(row) + ", col " + std::to_string(col) + ")");
  e.row_ = row;
  e.col_ = col;
  return e;
}

Error Error::at_index(Errc code, std::size_t index, const std::string& message) {
  Error e(code, message + " (index " + std::to_string(index) + ")");
  e.index_ = index;
  return e;
}

}  // namespace mwk
