#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

namespace forge::mixture {

using Digest = std::array<std::uint8_t, 32>;

// SHA-256.
Digest sha256(std::string_view bytes);
// Streams the file; throws IoError when it cannot be read.
Digest sha256_file(const std::filesystem::path& path);

std::string to_hex(const Digest& d);
std::optional<Digest> digest_from_hex(std::string_view hex);

}  // namespace forge::mixture
