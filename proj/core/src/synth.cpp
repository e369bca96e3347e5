#include "scpa/synth.hpp"

#include <algorithm>
#include <string>

#include "scpa/error.hpp"
#include "scpa/noise.hpp"

namespace scpa {

std::string_view to_string(Pattern p) noexcept {
  switch (p) {
    case Pattern::gradient: return "gradient";
    case Pattern::checkerboard: return "checkerboard";
    case Pattern::scene: return "scene";
  }
  return "?";
}

Pattern parse_pattern(std::string_view name) {
  if (name == "gradient") return Pattern::gradient;
  if (name == "checkerboard") return Pattern::checkerboard;
  if (name == "scene") return Pattern::scene;
  throw Error(Errc::invalid_argument, "unknown pattern '" + std::string(name) + "'");
}

namespace {

std::uint8_t diagonal(int x, int y, int width, int height, int shift,
                      int lo, int hi) {
  const long span = static_cast<long>(width) + height - 2;
  const long t = ((static_cast<long>(x) + y + shift) % (span + 1) + span + 1) % (span + 1);
  return static_cast<std::uint8_t>(lo + (span > 0 ? t * (hi - lo) / span : 0));
}

}  // namespace

Image synth_frame(Pattern pattern, int width, int height, int index) {
  Image img = Image::gray(width, height);
  switch (pattern) {
    case Pattern::gradient:
      for (int y = 0; y < height; ++y) {
        for (int x = 0; x < width; ++x) {
          img.at(x, y) = diagonal(x, y, width, height, 2 * index, 16, 239);
        }
      }
      break;
    case Pattern::checkerboard:
      for (int y = 0; y < height; ++y) {
        for (int x = 0; x < width; ++x) {
          const bool light = (((x + index) / 8) + (y / 8)) % 2 == 0;
          img.at(x, y) = light ? 192 : 64;
        }
      }
      break;
    case Pattern::scene: {
      // Gradient backdrop, a bright rectangle and a dark disc.
      const int rx0 = width / 8 + index % (width / 4 + 1);
      const int ry0 = height / 8;
      const int rx1 = rx0 + width * 3 / 8;
      const int ry1 = ry0 + height * 3 / 8;
      const long cx = width * 2 / 3;
      const long cy = height * 5 / 8;
      const long radius = std::min(width, height) / 5;
      for (int y = 0; y < height; ++y) {
        for (int x = 0; x < width; ++x) {
          std::uint8_t v = diagonal(x, y, width, height, 0, 40, 200);
          if (x >= rx0 && x < rx1 && y >= ry0 && y < ry1) v = 228;
          const long dx = x - cx;
          const long dy = y - cy;
          if (dx * dx + dy * dy <= radius * radius) v = 28;
          img.at(x, y) = v;
        }
      }
      break;
    }
  }
  return img;
}

Image random_image(int width, int height, int channels, std::uint64_t seed) {
  Image img(width, height, channels);
  SplitMix64 rng(seed);
  for (auto& s : img.samples()) s = static_cast<std::uint8_t>(rng.next() >> 56);
  return img;
}

}  // namespace scpa
