#pragma once

#include <string>
#include <string_view>

namespace formulas {

/// Lowercase hex SHA-256 digest of the bytes.
std::string sha256_hex(std::string_view data);

}  // namespace formulas
