#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "scpa/image.hpp"

namespace scpa {

// 16 packed 8-bit lanes, the operand format of the median extension
// instruction. Lanes at or beyond occupancy() are always zero.
class WideRegister {
 public:
  static constexpr std::size_t kLanes = 16;

  WideRegister() = default;

  // Throws invalid_argument if values.size() > kLanes.
  static WideRegister pack(std::span<const std::uint8_t> values);

  std::span<const std::uint8_t, kLanes> lanes() const noexcept { return lanes_; }
  std::size_t occupancy() const noexcept { return occupancy_; }

  friend bool operator==(const WideRegister&, const WideRegister&) = default;

 private:
  std::array<std::uint8_t, kLanes> lanes_{};
  std::size_t occupancy_ = 0;
};

// 3x3 neighbourhood in row-major order: NW N NE / W C E / SW S SE.
using Window3x3 = std::array<std::uint8_t, 9>;

struct LanePair {
  std::uint8_t lo;
  std::uint8_t hi;
  friend bool operator==(LanePair, LanePair) = default;
};

// The 19 compare-exchange stages of the minimal median-of-9 network. After
// running them in order, lane 4 holds the median. Each stage leaves
// min(lane[lo], lane[hi]) in lo and the max in hi.
inline constexpr std::array<LanePair, 19> kMedian9Network{{
    {1, 2}, {4, 5}, {7, 8},
    {0, 1}, {3, 4}, {6, 7},
    {1, 2}, {4, 5}, {7, 8},
    {0, 3}, {5, 8}, {4, 7},
    {3, 6}, {1, 4}, {2, 5},
    {4, 7}, {4, 2}, {6, 4},
    {4, 2},
}};

// Runs the network over the first nine lanes. `observe` is called with every
// lane pair before it is exchanged; the sequence never depends on the data.
template <typename Observer>
std::uint8_t run_median9_network(std::array<std::uint8_t, 16>& lanes,
                                 Observer&& observe) {
  for (const LanePair p : kMedian9Network) {
    observe(p);
    const std::uint8_t a = lanes[p.lo];
    const std::uint8_t b = lanes[p.hi];
    lanes[p.lo] = std::min(a, b);
    lanes[p.hi] = std::max(a, b);
  }
  return lanes[4];
}

std::uint8_t median9_naive(const Window3x3& w);
// Throws invalid_argument unless r.occupancy() == 9.
std::uint8_t median9_widereg(const WideRegister& r);
// Median of the three row medians. Rank among the nine values is in [4, 6].
std::uint8_t median9_approx(const Window3x3& w);

constexpr std::uint8_t median3(std::uint8_t a, std::uint8_t b,
                               std::uint8_t c) noexcept {
  return std::max(std::min(a, b), std::min(std::max(a, b), c));
}

// size x size values centred on (x, y); cells outside the image read as 0.
// Throws invalid_argument for an even or non-positive size.
std::vector<std::uint8_t> extract_window(const Image& img, int x, int y,
                                         int size);
Window3x3 extract_window3x3(const Image& img, int x, int y);

enum class MedianKernel { naive, widereg, approx };

std::string_view to_string(MedianKernel k) noexcept;
// Accepts "naive", "widereg", "approx"; throws invalid_argument otherwise.
MedianKernel parse_median_kernel(std::string_view name);

// Applies the kernel to the zero-padded 3x3 window of every input pixel.
// Output is independent of `threads`.
Image median_filter(const Image& img, MedianKernel kernel, int threads = 1);

struct AdaptiveParams {
  int initial_window = 3;
  int max_window = 7;

  // Throws invalid_argument unless both are odd and 3 <= initial <= max.
  void validate() const;
};

// Two-level adaptive median. Level A grows the window until
// Zmin < Zmed < Zmax (falling back to Zmed once max_window is exceeded);
// Level B keeps the pixel when Zmin < Zxy < Zmax and outputs Zmed otherwise.
// Borders are zero padded for every window size.
Image adaptive_median_filter(const Image& img, const AdaptiveParams& params = {},
                             int threads = 1);
std::uint8_t adaptive_median_pixel(const Image& img, int x, int y,
                                   const AdaptiveParams& params);

// Masked positions, at least `margin` pixels from every border, whose value
// is still an impulse (exactly 0 or 255).
std::size_t count_residual_impulses(const Image& img, const Mask& mask,
                                    int margin = 0);

}  // namespace scpa
