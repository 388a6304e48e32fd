#pragma once

#include <string>

namespace hsum {

// Shortest-round-trip is not what we want for reports; these always print
// 17 significant digits, locale-independent.
std::string format_double(double v);
std::string format_int128(__int128 v);

// JSON fragments: a quoted, escaped string and a number (null if not finite).
std::string json_string(const std::string& s);
std::string json_number(double v);

}  // namespace hsum
