#pragma once

#include <string>

namespace lrs {

/// Shortest-stable text for CSV/JSON artifacts: 17 significant digits,
/// '.' decimal separator regardless of locale.
std::string format_double(double x);

/// Writes the whole file or throws an io Error naming the path.
void write_text_file(const std::string& path, const std::string& contents);
std::string read_text_file(const std::string& path);

}  // namespace lrs
