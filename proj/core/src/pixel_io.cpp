#include "scpa/pixel_io.hpp"

#include <cctype>
#include <fstream>
#include <iterator>
#include <limits>
#include <optional>
#include <string>

#include "scpa/error.hpp"

namespace scpa {

namespace {

class Reader {
 public:
  explicit Reader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  std::size_t pos() const { return pos_; }
  bool at_end() const { return pos_ >= bytes_.size(); }
  std::size_t remaining() const { return bytes_.size() - pos_; }
  std::uint8_t take() { return bytes_[pos_++]; }
  std::span<const std::uint8_t> take(std::size_t n) {
    auto s = bytes_.subspan(pos_, n);
    pos_ += n;
    return s;
  }

  void skip_space_and_comments() {
    while (!at_end()) {
      const auto c = bytes_[pos_];
      if (c == '#') {
        while (!at_end() && bytes_[pos_] != '\n' && bytes_[pos_] != '\r') ++pos_;
      } else if (std::isspace(c)) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  // Returns nullopt when there is no digit at the cursor.
  std::optional<unsigned long> number() {
    if (at_end() || !std::isdigit(bytes_[pos_])) return std::nullopt;
    unsigned long v = 0;
    while (!at_end() && std::isdigit(bytes_[pos_])) {
      v = v * 10 + (bytes_[pos_] - '0');
      if (v > std::numeric_limits<unsigned int>::max()) return std::nullopt;
      ++pos_;
    }
    return v;
  }

 private:
  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

unsigned long header_field(Reader& r, const char* name, std::size_t* at_out = nullptr) {
  r.skip_space_and_comments();
  const auto at = r.pos();
  if (at_out) *at_out = at;
  auto v = r.number();
  if (!v) {
    if (r.at_end()) {
      throw Error(Errc::malformed_header,
                  std::string("missing ") + name, at);
    }
    throw Error(Errc::malformed_header,
                std::string("expected decimal ") + name, at);
  }
  return *v;
}

}  // namespace

Image parse_image(std::span<const std::uint8_t> bytes) {
  Reader r(bytes);
  if (r.remaining() < 2 || bytes[0] != 'P') {
    throw Error(Errc::malformed_header, "missing Netpbm magic", 0);
  }
  const char kind = static_cast<char>(bytes[1]);
  if (kind != '2' && kind != '3' && kind != '5' && kind != '6') {
    throw Error(Errc::malformed_header,
                std::string("unsupported magic P") + kind, 1);
  }
  r.take(2);
  const bool ascii = kind == '2' || kind == '3';
  const int channels = (kind == '2' || kind == '5') ? 1 : 3;

  std::size_t width_at = 0;
  const auto width = header_field(r, "width", &width_at);
  const auto height = header_field(r, "height");
  if (width == 0 || height == 0 ||
      width > static_cast<unsigned long>(std::numeric_limits<int>::max()) ||
      height > static_cast<unsigned long>(std::numeric_limits<int>::max())) {
    throw Error(Errc::malformed_header, "image dimensions must be positive",
                width_at);
  }
  std::size_t maxval_at = 0;
  const auto maxval = header_field(r, "maxval", &maxval_at);
  if (maxval != 255) {
    throw Error(Errc::unsupported_maxval,
                "maxval " + std::to_string(maxval) + " (only 255 supported)",
                maxval_at);
  }

  const std::size_t count = static_cast<std::size_t>(width) * height * channels;
  std::vector<std::uint8_t> samples;
  samples.reserve(count);

  if (!ascii) {
    // Exactly one whitespace byte separates maxval from the raster.
    if (r.at_end() || !std::isspace(bytes[r.pos()])) {
      throw Error(Errc::malformed_header, "expected whitespace after maxval",
                  r.pos());
    }
    r.take();
    if (r.remaining() < count) {
      throw Error(Errc::truncated_data,
                  "expected " + std::to_string(count) + " raster bytes, found " +
                      std::to_string(r.remaining()),
                  bytes.size());
    }
    auto raster = r.take(count);
    samples.assign(raster.begin(), raster.end());
  } else {
    for (std::size_t i = 0; i < count; ++i) {
      r.skip_space_and_comments();
      if (r.at_end()) {
        throw Error(Errc::truncated_data,
                    "expected " + std::to_string(count) + " samples, found " +
                        std::to_string(i),
                    r.pos());
      }
      const auto at = r.pos();
      auto v = r.number();
      if (!v || *v > 255) {
        throw Error(Errc::malformed_data, "sample is not a value in [0,255]",
                    at);
      }
      samples.push_back(static_cast<std::uint8_t>(*v));
    }
  }
  return Image(static_cast<int>(width), static_cast<int>(height), channels,
               std::move(samples));
}

Image read_image(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(Errc::io_failure, "cannot open " + path.string());
  }
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  if (in.bad()) {
    throw Error(Errc::io_failure, "read failed for " + path.string());
  }
  return parse_image(bytes);
}

std::vector<std::uint8_t> encode_image(const Image& img, bool ascii) {
  if (img.empty()) {
    throw Error(Errc::invalid_argument, "cannot encode an empty image");
  }
  const char magic = img.channels() == 1 ? (ascii ? '2' : '5')
                                         : (ascii ? '3' : '6');
  std::string header = std::string("P") + magic + "\n" +
                       std::to_string(img.width()) + " " +
                       std::to_string(img.height()) + "\n255\n";
  std::vector<std::uint8_t> out(header.begin(), header.end());
  if (!ascii) {
    auto s = img.samples();
    out.insert(out.end(), s.begin(), s.end());
    return out;
  }
  // One image row per line.
  for (int y = 0; y < img.height(); ++y) {
    auto row = img.row(y);
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out.push_back(' ');
      auto digits = std::to_string(row[i]);
      out.insert(out.end(), digits.begin(), digits.end());
    }
    out.push_back('\n');
  }
  return out;
}

void write_image(const Image& img, const std::filesystem::path& path,
                 bool ascii) {
  const auto bytes = encode_image(img, ascii);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw Error(Errc::io_failure, "cannot open " + path.string() + " for writing");
  }
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) {
    throw Error(Errc::io_failure, "write failed for " + path.string());
  }
}

}  // namespace scpa
