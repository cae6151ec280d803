#pragma once

#include <string>
#include <string_view>

namespace tfpm {

// Shortest decimal text that round-trips to the same double.
std::string format_number(double value);

// Whole-string parses; surrounding whitespace is ignored.
bool parse_number(std::string_view text, double& out);
bool parse_integer(std::string_view text, int& out);

std::string_view trim(std::string_view text);

}  // namespace tfpm
