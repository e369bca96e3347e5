#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace scpa {

// 8-bit raster, row-major, channels interleaved. Grayscale has one channel,
// RGB three. All kernels take and return Images by value.
class Image {
 public:
  Image() = default;
  Image(int width, int height, int channels, std::uint8_t fill = 0);
  Image(int width, int height, int channels, std::vector<std::uint8_t> samples);

  static Image gray(int width, int height, std::uint8_t fill = 0) {
    return Image(width, height, 1, fill);
  }
  static Image rgb(int width, int height, std::uint8_t fill = 0) {
    return Image(width, height, 3, fill);
  }

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  int channels() const noexcept { return channels_; }
  std::size_t pixel_count() const noexcept {
    return static_cast<std::size_t>(width_) * static_cast<std::size_t>(height_);
  }
  bool empty() const noexcept { return samples_.empty(); }

  std::span<const std::uint8_t> samples() const noexcept { return samples_; }
  std::span<std::uint8_t> samples() noexcept { return samples_; }

  std::span<const std::uint8_t> row(int y) const noexcept {
    return std::span(samples_).subspan(row_offset(y), row_stride());
  }
  std::span<std::uint8_t> row(int y) noexcept {
    return std::span(samples_).subspan(row_offset(y), row_stride());
  }

  std::uint8_t at(int x, int y, int c = 0) const noexcept {
    return samples_[index(x, y, c)];
  }
  std::uint8_t& at(int x, int y, int c = 0) noexcept {
    return samples_[index(x, y, c)];
  }

  std::size_t row_stride() const noexcept {
    return static_cast<std::size_t>(width_) * static_cast<std::size_t>(channels_);
  }

  friend bool operator==(const Image&, const Image&) = default;

 private:
  std::size_t row_offset(int y) const noexcept {
    return static_cast<std::size_t>(y) * row_stride();
  }
  std::size_t index(int x, int y, int c) const noexcept {
    return row_offset(y) + static_cast<std::size_t>(x) * channels_ + c;
  }

  int width_ = 0;
  int height_ = 0;
  int channels_ = 0;
  std::vector<std::uint8_t> samples_;
};

// Per-pixel boolean raster with the geometry of the image it describes.
class Mask {
 public:
  Mask() = default;
  Mask(int width, int height, bool fill = false);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  bool at(int x, int y) const noexcept { return bits_[index(x, y)] != 0; }
  void set(int x, int y, bool v) noexcept { bits_[index(x, y)] = v ? 1 : 0; }
  bool at_index(std::size_t i) const noexcept { return bits_[i] != 0; }
  void set_index(std::size_t i, bool v) noexcept { bits_[i] = v ? 1 : 0; }
  std::size_t size() const noexcept { return bits_.size(); }
  std::size_t count() const noexcept;

  // 0/255 grayscale rendering, used for mask sidecar files.
  Image to_image() const;
  static Mask from_image(const Image& img);

  friend bool operator==(const Mask&, const Mask&) = default;

 private:
  std::size_t index(int x, int y) const noexcept {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) + x;
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<std::uint8_t> bits_;
};

void require_gray(const Image& img, const char* op);
void require_rgb(const Image& img, const char* op);

}  // namespace scpa
