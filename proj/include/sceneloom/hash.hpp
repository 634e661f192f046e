#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>

namespace sceneloom {

/// Lowercase hex SHA-256.
std::string sha256_hex(std::string_view data);
std::string sha256_hex(std::span<const std::uint8_t> data);

/// 64-bit FNV-1a; stable across platforms, used to derive colours and
/// procedural parameters from names and descriptions.
constexpr std::uint64_t fnv1a64(std::string_view s)
{
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

std::string base64_encode(std::span<const std::uint8_t> data);

}  // namespace sceneloom
