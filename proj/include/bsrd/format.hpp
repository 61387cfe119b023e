#pragma once

#include <cstdint>
#include <string>

namespace bsrd {

/// Shortest decimal string that parses back to the same double.
std::string shortest(double value);

std::string shortest(std::int64_t value);
std::string shortest(std::uint64_t value);
inline std::string shortest(int value) { return shortest(static_cast<std::int64_t>(value)); }

}  // namespace bsrd
