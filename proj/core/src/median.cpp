#include "scpa/median.hpp"

#include <string>

#include "scpa/error.hpp"
#include "scpa/parallel.hpp"

namespace scpa {

WideRegister WideRegister::pack(std::span<const std::uint8_t> values) {
  if (values.size() > kLanes) {
    throw Error(Errc::invalid_argument,
                "wide register holds at most 16 lanes, got " +
                    std::to_string(values.size()));
  }
  WideRegister r;
  std::copy(values.begin(), values.end(), r.lanes_.begin());
  r.occupancy_ = values.size();
  return r;
}

std::uint8_t median9_naive(const Window3x3& w) {
  Window3x3 sorted = w;
  std::sort(sorted.begin(), sorted.end());
  return sorted[4];
}

std::uint8_t median9_widereg(const WideRegister& r) {
  if (r.occupancy() != 9) {
    throw Error(Errc::invalid_argument,
                "median instruction needs 9 occupied lanes, got " +
                    std::to_string(r.occupancy()));
  }
  std::array<std::uint8_t, 16> lanes;
  std::copy(r.lanes().begin(), r.lanes().end(), lanes.begin());
  return run_median9_network(lanes, [](LanePair) {});
}

std::uint8_t median9_approx(const Window3x3& w) {
  return median3(median3(w[0], w[1], w[2]), median3(w[3], w[4], w[5]),
                 median3(w[6], w[7], w[8]));
}

std::vector<std::uint8_t> extract_window(const Image& img, int x, int y,
                                         int size) {
  require_gray(img, "extract_window");
  if (size <= 0 || size % 2 == 0) {
    throw Error(Errc::invalid_argument,
                "window size must be odd and positive, got " +
                    std::to_string(size));
  }
  if (x < 0 || y < 0 || x >= img.width() || y >= img.height()) {
    throw Error(Errc::invalid_argument, "window centre outside the image");
  }
  const int r = size / 2;
  std::vector<std::uint8_t> out;
  out.reserve(static_cast<std::size_t>(size) * size);
  for (int dy = -r; dy <= r; ++dy) {
    const int yy = y + dy;
    for (int dx = -r; dx <= r; ++dx) {
      const int xx = x + dx;
      const bool inside = yy >= 0 && yy < img.height() && xx >= 0 &&
                          xx < img.width();
      out.push_back(inside ? img.at(xx, yy) : 0);
    }
  }
  return out;
}

namespace {

// Fills `out` with the zero-padded size x size window. No argument checks.
void gather_window(const Image& img, int x, int y, int size,
                   std::uint8_t* out) {
  const int r = size / 2;
  const int w = img.width();
  const int h = img.height();
  for (int dy = -r; dy <= r; ++dy) {
    const int yy = y + dy;
    if (yy < 0 || yy >= h) {
      std::fill_n(out, size, std::uint8_t{0});
      out += size;
      continue;
    }
    const auto row = img.row(yy);
    for (int dx = -r; dx <= r; ++dx) {
      const int xx = x + dx;
      *out++ = (xx >= 0 && xx < w) ? row[xx] : 0;
    }
  }
}

}  // namespace

Window3x3 extract_window3x3(const Image& img, int x, int y) {
  require_gray(img, "extract_window3x3");
  Window3x3 w;
  gather_window(img, x, y, 3, w.data());
  return w;
}

std::string_view to_string(MedianKernel k) noexcept {
  switch (k) {
    case MedianKernel::naive: return "naive";
    case MedianKernel::widereg: return "widereg";
    case MedianKernel::approx: return "approx";
  }
  return "?";
}

MedianKernel parse_median_kernel(std::string_view name) {
  if (name == "naive") return MedianKernel::naive;
  if (name == "widereg") return MedianKernel::widereg;
  if (name == "approx") return MedianKernel::approx;
  throw Error(Errc::invalid_argument,
              "unknown median kernel '" + std::string(name) + "'");
}

namespace {

template <typename Kernel>
Image filter3x3(const Image& img, int threads, Kernel&& kernel) {
  Image out = Image::gray(img.width(), img.height());
  parallel_rows(img.height(), threads, [&](int y0, int y1) {
    Window3x3 w;
    for (int y = y0; y < y1; ++y) {
      auto dst = out.row(y);
      for (int x = 0; x < img.width(); ++x) {
        gather_window(img, x, y, 3, w.data());
        dst[x] = kernel(w);
      }
    }
  });
  return out;
}

}  // namespace

Image median_filter(const Image& img, MedianKernel kernel, int threads) {
  require_gray(img, "median_filter");
  switch (kernel) {
    case MedianKernel::naive:
      return filter3x3(img, threads, median9_naive);
    case MedianKernel::widereg:
      return filter3x3(img, threads, [](const Window3x3& w) {
        return median9_widereg(WideRegister::pack(w));
      });
    case MedianKernel::approx:
      return filter3x3(img, threads, median9_approx);
  }
  throw Error(Errc::invalid_argument, "unknown median kernel");
}

void AdaptiveParams::validate() const {
  if (initial_window < 3 || initial_window % 2 == 0 || max_window % 2 == 0 ||
      max_window < initial_window) {
    throw Error(Errc::invalid_argument,
                "adaptive windows must be odd with 3 <= initial <= max, got " +
                    std::to_string(initial_window) + "/" +
                    std::to_string(max_window));
  }
}

namespace {

std::uint8_t adaptive_at(const Image& img, int x, int y,
                         const AdaptiveParams& params,
                         std::vector<std::uint8_t>& buf) {
  const std::uint8_t zxy = img.at(x, y);
  for (int s = params.initial_window;; s += 2) {
    const std::size_t n = static_cast<std::size_t>(s) * s;
    const std::size_t half = n / 2;
    buf.resize(n);
    gather_window(img, x, y, s, buf.data());

    std::uint8_t zmin = 255;
    std::uint8_t zmax = 0;
    for (const auto v : buf) {
      zmin = std::min(zmin, v);
      zmax = std::max(zmax, v);
    }
    std::size_t at_min = 0;
    std::size_t at_max = 0;
    for (const auto v : buf) {
      at_min += v == zmin;
      at_max += v == zmax;
    }
    // Zmed = sorted[half] equals Zmin exactly when more than half the window
    // sits at Zmin (likewise Zmax), so Level A needs no sort.
    if (at_min <= half && at_max <= half) {
      if (zmin < zxy && zxy < zmax) return zxy;
      auto mid = buf.begin() + static_cast<std::ptrdiff_t>(half);
      std::nth_element(buf.begin(), mid, buf.end());
      return *mid;
    }
    if (s + 2 > params.max_window) return at_min > half ? zmin : zmax;
  }
}

}  // namespace

std::uint8_t adaptive_median_pixel(const Image& img, int x, int y,
                                   const AdaptiveParams& params) {
  require_gray(img, "adaptive_median_pixel");
  params.validate();
  std::vector<std::uint8_t> buf;
  return adaptive_at(img, x, y, params, buf);
}

Image adaptive_median_filter(const Image& img, const AdaptiveParams& params,
                             int threads) {
  require_gray(img, "adaptive_median_filter");
  params.validate();
  Image out = Image::gray(img.width(), img.height());
  parallel_rows(img.height(), threads, [&](int y0, int y1) {
    std::vector<std::uint8_t> buf;
    buf.reserve(static_cast<std::size_t>(params.max_window) * params.max_window);
    for (int y = y0; y < y1; ++y) {
      auto dst = out.row(y);
      for (int x = 0; x < img.width(); ++x) {
        dst[x] = adaptive_at(img, x, y, params, buf);
      }
    }
  });
  return out;
}

std::size_t count_residual_impulses(const Image& img, const Mask& mask,
                                    int margin) {
  require_gray(img, "count_residual_impulses");
  if (mask.width() != img.width() || mask.height() != img.height()) {
    throw Error(Errc::dimension_mismatch,
                "mask is " + std::to_string(mask.width()) + "x" +
                    std::to_string(mask.height()) + ", image is " +
                    std::to_string(img.width()) + "x" +
                    std::to_string(img.height()));
  }
  if (margin < 0) {
    throw Error(Errc::invalid_argument, "margin must be non-negative");
  }
  std::size_t count = 0;
  for (int y = margin; y < img.height() - margin; ++y) {
    for (int x = margin; x < img.width() - margin; ++x) {
      if (!mask.at(x, y)) continue;
      const auto v = img.at(x, y);
      if (v == 0 || v == 255) ++count;
    }
  }
  return count;
}

}  // namespace scpa
