#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace revdetect::util {

std::string ascii_lower(std::string_view s);
std::string_view trim(std::string_view s);
std::vector<std::string> split(std::string_view s, char sep);
// Splits on `sep`, trims each piece and drops empty pieces.
std::vector<std::string> split_list(std::string_view s, char sep = ',');
bool starts_with_ci(std::string_view s, std::string_view prefix);
// Fixed-point formatting, independent of the global locale.
std::string fixed(double value, int decimals);
// Replaces characters outside [A-Za-z0-9._-] with '_'.
std::string slug(std::string_view s);

}  // namespace revdetect::util
