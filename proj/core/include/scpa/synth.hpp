#pragma once

#include <cstdint>
#include <string_view>

#include "scpa/image.hpp"

namespace scpa {

// Synthetic grayscale test patterns. Every sample lies in [16, 239], so any
// 0 or 255 in a frame was put there by noise injection.
enum class Pattern { gradient, checkerboard, scene };

std::string_view to_string(Pattern p) noexcept;
Pattern parse_pattern(std::string_view name);

// Frame `index` of an animated pattern; the content drifts with the index.
Image synth_frame(Pattern pattern, int width, int height, int index = 0);

// Uniformly random samples from SplitMix64(seed).
Image random_image(int width, int height, int channels, std::uint64_t seed);

}  // namespace scpa
