#include "scpa/colorspace.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>

#include "scpa/error.hpp"
#include "scpa/parallel.hpp"

namespace scpa {

namespace {

// Reference coefficient rows, before chroma range fitting.
constexpr std::array<double, 3> kLuma{0.299, 0.587, 0.114};

constexpr Mat3 kYiq{{kLuma,
                     {0.596, -0.274, -0.322},
                     {0.212, -0.523, 0.311}}};
constexpr Mat3 kYuv{{kLuma,
                     {-0.147, -0.289, 0.436},
                     {0.615, -0.515, -0.100}}};
constexpr Mat3 kYcc{{kLuma,
                     {-0.168736, -0.331264, 0.5},
                     {0.5, -0.418688, -0.081312}}};
constexpr Vec3 kChromaBias{0.0, 128.0, 128.0};

// Largest |row . rgb| over rgb in [0,255]^3.
double row_range(const std::array<double, 3>& row) {
  double pos = 0.0;
  double neg = 0.0;
  for (double c : row) (c > 0 ? pos : neg) += c;
  return 255.0 * std::max(pos, -neg);
}

Mat3 fit_chroma(Mat3 m) {
  for (int r = 1; r < 3; ++r) {
    const double range = row_range(m[r]);
    if (range > 127.5) {
      for (double& c : m[r]) c *= 127.5 / range;
    }
  }
  return m;
}

ColorMatrix make_cmy() {
  ColorMatrix m;
  m.name = "cmy";
  m.complement = true;
  for (int i = 0; i < 3; ++i) {
    m.coeffs_real[i][i] = -1.0;
    m.offsets_real[i] = 255.0;
    m.coeffs_q88[i][i] = -256;
    m.offsets_q88[i] = 255 * 256;
  }
  return m;
}

const std::map<std::string, ColorMatrix, std::less<>>& registry() {
  static const auto table = [] {
    std::map<std::string, ColorMatrix, std::less<>> t;
    t.emplace("ycc", make_color_matrix("ycc", fit_chroma(kYcc), kChromaBias, true));
    t.emplace("yiq", make_color_matrix("yiq", fit_chroma(kYiq), kChromaBias, true));
    t.emplace("yuv", make_color_matrix("yuv", fit_chroma(kYuv), kChromaBias, true));
    t.emplace("cmy", make_cmy());
    return t;
  }();
  return table;
}

inline std::uint8_t clamp8(long v) {
  return static_cast<std::uint8_t>(std::clamp(v, 0L, 255L));
}

}  // namespace

std::string_view to_string(ArithPath p) noexcept {
  return p == ArithPath::real ? "real" : "q88";
}

ArithPath parse_arith_path(std::string_view name) {
  if (name == "real") return ArithPath::real;
  if (name == "q88") return ArithPath::q88;
  throw Error(Errc::invalid_argument,
              "unknown arithmetic path '" + std::string(name) + "'");
}

std::span<const std::string_view> color_space_names() noexcept {
  static constexpr std::array<std::string_view, 4> kNames{"ycc", "yiq", "yuv",
                                                          "cmy"};
  return kNames;
}

const ColorMatrix& color_matrix(std::string_view name) {
  const auto& t = registry();
  auto it = t.find(name);
  if (it == t.end()) {
    throw Error(Errc::unknown_matrix,
                "no colour conversion named '" + std::string(name) + "'");
  }
  return it->second;
}

ColorMatrix make_color_matrix(std::string name, const Mat3& coeffs,
                              const Vec3& offsets, bool luma_row_sum) {
  ColorMatrix m;
  m.name = std::move(name);
  m.coeffs_real = coeffs;
  m.offsets_real = offsets;
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) {
      const long q = std::lround(coeffs[r][c] * 256.0);
      if (q < INT16_MIN || q > INT16_MAX) {
        throw Error(Errc::invalid_argument,
                    "coefficient does not fit Q8.8: " +
                        std::to_string(coeffs[r][c]));
      }
      m.coeffs_q88[r][c] = static_cast<std::int16_t>(q);
    }
    m.offsets_q88[r] = static_cast<std::int32_t>(std::lround(offsets[r] * 256.0));
  }
  if (luma_row_sum) {
    auto& row = m.coeffs_q88[0];
    const int residual = 256 - (row[0] + row[1] + row[2]);
    auto largest = std::max_element(row.begin(), row.end(), [](auto a, auto b) {
      return std::abs(a) < std::abs(b);
    });
    *largest = static_cast<std::int16_t>(*largest + residual);
  }
  return m;
}

ColorMatrix inverse_matrix(const ColorMatrix& m) {
  if (m.complement) return m;

  const Mat3& a = m.coeffs_real;
  const double det = a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) -
                     a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
                     a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
  if (std::abs(det) < 1e-12) {
    throw Error(Errc::invalid_argument, "matrix '" + m.name + "' is singular");
  }
  Mat3 inv;
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) {
      // Cofactor of (c, r) over det gives the (r, c) inverse entry.
      const int r0 = (c + 1) % 3, r1 = (c + 2) % 3;
      const int c0 = (r + 1) % 3, c1 = (r + 2) % 3;
      inv[r][c] = (a[r0][c0] * a[r1][c1] - a[r0][c1] * a[r1][c0]) / det;
    }
  }
  Vec3 off{};
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) off[r] -= inv[r][c] * m.offsets_real[c];
  }

  std::string name = m.name;
  constexpr std::string_view kSuffix = "_inv";
  if (name.size() > kSuffix.size() && name.ends_with(kSuffix)) {
    name.resize(name.size() - kSuffix.size());
  } else {
    name += kSuffix;
  }
  return make_color_matrix(std::move(name), inv, off, false);
}

PixelTriple convert_pixel_real(PixelTriple p, const ColorMatrix& m) {
  if (m.complement) {
    return {static_cast<std::uint8_t>(255 - p.c0),
            static_cast<std::uint8_t>(255 - p.c1),
            static_cast<std::uint8_t>(255 - p.c2)};
  }
  const std::array<double, 3> in{double(p.c0), double(p.c1), double(p.c2)};
  std::array<std::uint8_t, 3> out;
  for (int r = 0; r < 3; ++r) {
    const auto& row = m.coeffs_real[r];
    const double v = row[0] * in[0] + row[1] * in[1] + row[2] * in[2] +
                     m.offsets_real[r];
    out[r] = clamp8(static_cast<long>(std::floor(v + 0.5)));
  }
  return {out[0], out[1], out[2]};
}

PixelTriple convert_pixel_q88(PixelTriple p, const ColorMatrix& m) {
  if (m.complement) return convert_pixel_real(p, m);
  const std::array<std::int32_t, 3> in{p.c0, p.c1, p.c2};
  std::array<std::uint8_t, 3> out;
  for (int r = 0; r < 3; ++r) {
    const auto& row = m.coeffs_q88[r];
    const std::int32_t acc = row[0] * in[0] + row[1] * in[1] + row[2] * in[2] +
                             m.offsets_q88[r] + 128;
    out[r] = clamp8(acc >> 8);
  }
  return {out[0], out[1], out[2]};
}

void convert_span(std::span<const std::uint8_t> in, std::span<std::uint8_t> out,
                  const ColorMatrix& m, ArithPath path) {
  if (in.size() != out.size() || in.size() % 3 != 0) {
    throw Error(Errc::dimension_mismatch,
                "convert_span needs equal spans of whole RGB pixels");
  }
  for (std::size_t i = 0; i < in.size(); i += 3) {
    const auto q = convert_pixel({in[i], in[i + 1], in[i + 2]}, m, path);
    out[i] = q.c0;
    out[i + 1] = q.c1;
    out[i + 2] = q.c2;
  }
}

Image convert_image(const Image& img, const ColorMatrix& m, ArithPath path,
                    int threads) {
  require_rgb(img, "convert_image");
  Image out = Image::rgb(img.width(), img.height());
  parallel_rows(img.height(), threads, [&](int y0, int y1) {
    for (int y = y0; y < y1; ++y) convert_span(img.row(y), out.row(y), m, path);
  });
  return out;
}

}  // namespace scpa
