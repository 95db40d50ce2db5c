#pragma once

#include <string>
#include <string_view>

namespace stm {

/// SHA-256 of the given bytes as a lowercase hex string.
std::string sha256_hex(std::string_view data);

}  // namespace stm
