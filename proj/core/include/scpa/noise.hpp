#pragma once

#include <cstdint>

#include "scpa/image.hpp"

namespace scpa {

// SplitMix64; identical sequence on every platform.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  std::uint64_t next() noexcept {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, bound) by rejection; bound must be > 0.
  std::uint64_t below(std::uint64_t bound) noexcept {
    const std::uint64_t limit = -bound % bound;  // 2^64 mod bound
    for (;;) {
      const std::uint64_t v = next();
      if (v >= limit) return v % bound;
    }
  }

 private:
  std::uint64_t state_;
};

struct NoiseSpec {
  double density = 0.1;
  std::uint64_t seed = 42;
  std::uint8_t salt_value = 255;
  std::uint8_t pepper_value = 0;
};

struct NoisyImage {
  Image image;
  Mask mask;
};

// Number of corrupted pixels for a density over pixel_count pixels:
// round(density * pixel_count), halves rounded away from zero.
std::size_t corrupted_count(double density, std::size_t pixel_count);

// Replaces exactly corrupted_count() distinct pixels (partial Fisher-Yates over
// the pixel index space) with salt or pepper, one generator bit per pixel.
// Grayscale only.
NoisyImage inject_impulse_noise(const Image& img, const NoiseSpec& spec);

}  // namespace scpa
