#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace reprank {

/// Shortest decimal form that parses back to the identical double.
std::string format_double(double value);

std::optional<double> parse_double(std::string_view token);
std::optional<std::uint32_t> parse_u32(std::string_view token);
std::optional<std::uint64_t> parse_u64(std::string_view token);

std::string_view trim(std::string_view text);

/// Splits on every occurrence of `sep` (multi-character separators allowed).
std::vector<std::string_view> split(std::string_view text,
                                    std::string_view sep);

}  // namespace reprank
