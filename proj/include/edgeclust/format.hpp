#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace edgeclust {

/// Shortest decimal text that parses back to the same double.
[[nodiscard]] std::string format_number(double value);
[[nodiscard]] std::string format_number(std::uint64_t value);
[[nodiscard]] std::string format_number(std::int64_t value);

[[nodiscard]] std::optional<double> parse_double(std::string_view text);
[[nodiscard]] std::optional<std::uint64_t> parse_uint(std::string_view text);
[[nodiscard]] std::optional<std::int64_t> parse_int(std::string_view text);

[[nodiscard]] std::string_view trim(std::string_view text) noexcept;

}  // namespace edgeclust
