#include "scpa/image.hpp"

#include <algorithm>
#include <string>

#include "scpa/error.hpp"

namespace scpa {

namespace {

void check_geometry(int width, int height, int channels) {
  if (width <= 0 || height <= 0) {
    throw Error(Errc::invalid_argument,
                "image dimensions must be positive, got " +
                    std::to_string(width) + "x" + std::to_string(height));
  }
  if (channels != 1 && channels != 3) {
    throw Error(Errc::invalid_argument,
                "channels must be 1 or 3, got " + std::to_string(channels));
  }
}

}  // namespace

Image::Image(int width, int height, int channels, std::uint8_t fill)
    : width_(width), height_(height), channels_(channels) {
  check_geometry(width, height, channels);
  samples_.assign(pixel_count() * channels_, fill);
}

Image::Image(int width, int height, int channels,
             std::vector<std::uint8_t> samples)
    : width_(width),
      height_(height),
      channels_(channels),
      samples_(std::move(samples)) {
  check_geometry(width, height, channels);
  if (samples_.size() != pixel_count() * channels_) {
    throw Error(Errc::invalid_argument,
                "sample count " + std::to_string(samples_.size()) +
                    " does not match " + std::to_string(width) + "x" +
                    std::to_string(height) + "x" + std::to_string(channels));
  }
}

Mask::Mask(int width, int height, bool fill) : width_(width), height_(height) {
  if (width <= 0 || height <= 0) {
    throw Error(Errc::invalid_argument, "mask dimensions must be positive");
  }
  bits_.assign(static_cast<std::size_t>(width) * height, fill ? 1 : 0);
}

std::size_t Mask::count() const noexcept {
  return static_cast<std::size_t>(
      std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
}

Image Mask::to_image() const {
  Image img = Image::gray(width_, height_);
  auto out = img.samples();
  for (std::size_t i = 0; i < bits_.size(); ++i) out[i] = bits_[i] ? 255 : 0;
  return img;
}

Mask Mask::from_image(const Image& img) {
  require_gray(img, "Mask::from_image");
  Mask m(img.width(), img.height());
  auto in = img.samples();
  for (std::size_t i = 0; i < in.size(); ++i) m.bits_[i] = in[i] != 0 ? 1 : 0;
  return m;
}

void require_gray(const Image& img, const char* op) {
  if (img.channels() != 1) {
    throw Error(Errc::unsupported_input,
                std::string(op) + " needs a grayscale image, got " +
                    std::to_string(img.channels()) + " channels");
  }
}

void require_rgb(const Image& img, const char* op) {
  if (img.channels() != 3) {
    throw Error(Errc::unsupported_input,
                std::string(op) + " needs an RGB image, got " +
                    std::to_string(img.channels()) + " channels");
  }
}

}  // namespace scpa
