#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>

#include "scpa/image.hpp"

namespace scpa {

using Mat3 = std::array<std::array<double, 3>, 3>;
using Vec3 = std::array<double, 3>;
using Mat3Q88 = std::array<std::array<std::int16_t, 3>, 3>;
using Vec3Q88 = std::array<std::int32_t, 3>;

struct PixelTriple {
  std::uint8_t c0 = 0;
  std::uint8_t c1 = 0;
  std::uint8_t c2 = 0;
  friend bool operator==(PixelTriple, PixelTriple) = default;
};

// An affine 8-bit colour transform: out = clamp(coeffs * in + offsets).
// The Q8.8 fields are the same transform scaled by 256 for the
// 8-bit-pixel x 16-bit-coefficient integer datapath. A complement matrix
// (CMY) bypasses both and computes 255 - in exactly.
struct ColorMatrix {
  std::string name;
  bool complement = false;
  Mat3 coeffs_real{};
  Vec3 offsets_real{};
  Mat3Q88 coeffs_q88{};
  Vec3Q88 offsets_q88{};
};

enum class ArithPath { real, q88 };

std::string_view to_string(ArithPath p) noexcept;
ArithPath parse_arith_path(std::string_view name);

// "ycc", "yiq", "yuv", "cmy".
std::span<const std::string_view> color_space_names() noexcept;

// Registered forward matrices by name. Signed chroma planes are stored with a
// +128 bias; chroma rows whose response over [0,255]^3 would leave
// [-127.5, 127.5] are scaled down to fit, so no RGB input clips.
// Throws unknown_matrix for any other name.
const ColorMatrix& color_matrix(std::string_view name);

// Builds a matrix and its Q8.8 image. With luma_row_sum, row 0's largest
// coefficient absorbs the rounding residual so the row sums to exactly 256.
ColorMatrix make_color_matrix(std::string name, const Mat3& coeffs,
                              const Vec3& offsets, bool luma_row_sum);

// Affine inverse (including offsets). CMY is returned unchanged.
ColorMatrix inverse_matrix(const ColorMatrix& m);

PixelTriple convert_pixel_real(PixelTriple p, const ColorMatrix& m);
PixelTriple convert_pixel_q88(PixelTriple p, const ColorMatrix& m);
inline PixelTriple convert_pixel(PixelTriple p, const ColorMatrix& m,
                                 ArithPath path) {
  return path == ArithPath::real ? convert_pixel_real(p, m)
                                 : convert_pixel_q88(p, m);
}

// Per-pixel conversion of an RGB image; rows may be split across threads.
Image convert_image(const Image& img, const ColorMatrix& m, ArithPath path,
                    int threads = 1);

// Converts interleaved RGB samples from `in` into `out` (same length).
void convert_span(std::span<const std::uint8_t> in, std::span<std::uint8_t> out,
                  const ColorMatrix& m, ArithPath path);

}  // namespace scpa
