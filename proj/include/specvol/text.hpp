#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace specvol {

// Shortest decimal representation that round-trips the exact double.
// Used for every numeric field in report files so golden files stay stable.
std::string format_double(double v);

void append_double(std::string& out, double v);
void append_int(std::string& out, long long v);

std::string_view trim(std::string_view s);

std::optional<long long> parse_int(std::string_view s);
std::optional<double> parse_double(std::string_view s);

} // namespace specvol
