#pragma once

#include <filesystem>

#include "scpa/image.hpp"

namespace scpa {

// Netpbm P2/P3/P5/P6 with maxval 255. '#' comments are skipped in headers.
// Throws Error with malformed_header, unsupported_maxval, truncated_data or
// malformed_data; each carries the byte offset where reading stopped.
Image read_image(const std::filesystem::path& path);
Image parse_image(std::span<const std::uint8_t> bytes);

// Writes P5/P6 (binary) or P2/P3 (ascii). Header is "P?\n<w> <h>\n255\n".
void write_image(const Image& img, const std::filesystem::path& path,
                 bool ascii = false);
std::vector<std::uint8_t> encode_image(const Image& img, bool ascii = false);

}  // namespace scpa
