#pragma once

#include <filesystem>
#include <string>

namespace mwk::cli {

/// Shortest decimal string that parses back to the same double.
std::string format_number(double value);

/// Writes `text` verbatim. Throws Error(IoError).
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace mwk::cli
