#include "scpa/noise.hpp"

#include <cmath>
#include <numeric>
#include <string>
#include <utility>

#include "scpa/error.hpp"

namespace scpa {

std::size_t corrupted_count(double density, std::size_t pixel_count) {
  if (!(density >= 0.0 && density <= 1.0)) {
    throw Error(Errc::invalid_argument,
                "noise density must be in [0,1], got " + std::to_string(density));
  }
  return static_cast<std::size_t>(
      std::llround(density * static_cast<double>(pixel_count)));
}

NoisyImage inject_impulse_noise(const Image& img, const NoiseSpec& spec) {
  require_gray(img, "inject_impulse_noise");
  const std::size_t n = img.pixel_count();
  const std::size_t k = corrupted_count(spec.density, n);

  NoisyImage out{img, Mask(img.width(), img.height())};
  if (k == 0) return out;

  std::vector<std::uint32_t> order(n);
  std::iota(order.begin(), order.end(), 0u);

  SplitMix64 rng(spec.seed);
  auto samples = out.image.samples();
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng.below(n - i));
    std::swap(order[i], order[j]);
    const std::uint32_t pixel = order[i];
    const bool salt = (rng.next() >> 63) != 0;
    samples[pixel] = salt ? spec.salt_value : spec.pepper_value;
    out.mask.set_index(pixel, true);
  }
  return out;
}

}  // namespace scpa
