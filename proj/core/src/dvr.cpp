#include "scpa/dvr.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <limits>

#include "scpa/error.hpp"
#include "scpa/pixel_io.hpp"

namespace scpa {

Geometry parse_geometry(std::string_view preset) {
  if (preset == "cif") return {352, 288};
  if (preset == "ntsc") return {640, 480};
  if (preset == "pal") return {704, 576};
  const auto x = preset.find('x');
  if (x != std::string_view::npos) {
    try {
      std::size_t a = 0;
      std::size_t b = 0;
      const std::string w(preset.substr(0, x));
      const std::string h(preset.substr(x + 1));
      const int width = std::stoi(w, &a);
      const int height = std::stoi(h, &b);
      if (a == w.size() && b == h.size() && width > 0 && height > 0) {
        return {width, height};
      }
    } catch (const std::exception&) {
    }
  }
  throw Error(Errc::invalid_argument,
              "unknown geometry '" + std::string(preset) +
                  "' (cif, ntsc, pal or WxH)");
}

FrameSource FrameSource::synthetic(Geometry g, int frames, Pattern p,
                                   double fps_target) {
  FrameSource s;
  s.width = g.width;
  s.height = g.height;
  s.frame_count = frames;
  s.pattern = p;
  s.fps_target = fps_target;
  s.validate();
  return s;
}

FrameSource FrameSource::file_sequence(std::vector<std::filesystem::path> files,
                                       double fps_target) {
  if (files.empty()) {
    throw Error(Errc::invalid_argument, "file sequence is empty");
  }
  FrameSource s;
  const Image first = read_image(files.front());
  require_gray(first, "file_sequence");
  s.width = first.width();
  s.height = first.height();
  s.frame_count = static_cast<int>(files.size());
  s.files = std::move(files);
  s.fps_target = fps_target;
  s.validate();
  return s;
}

void FrameSource::validate() const {
  if (frame_count < 1) {
    throw Error(Errc::invalid_argument, "frame_count must be at least 1");
  }
  if (!(fps_target > 0.0)) {
    throw Error(Errc::invalid_argument, "fps_target must be positive");
  }
  if (width <= 0 || height <= 0) {
    throw Error(Errc::invalid_argument, "frame geometry must be positive");
  }
}

Image FrameSource::frame(int index) const {
  if (files.empty()) return synth_frame(pattern, width, height, index);
  Image img = read_image(files.at(static_cast<std::size_t>(index)));
  require_gray(img, "frame source");
  if (img.width() != width || img.height() != height) {
    throw Error(Errc::dimension_mismatch,
                files[index].string() + " differs in size from the first frame");
  }
  return img;
}

std::uint64_t frame_seed(std::uint64_t base, int index) noexcept {
  return base ^ (static_cast<std::uint64_t>(index) * 0x9E3779B97F4A7C15ULL);
}

Image make_composite(const Image& noisy, const Image& filtered) {
  require_gray(noisy, "make_composite");
  require_gray(filtered, "make_composite");
  if (noisy.width() != filtered.width() || noisy.height() != filtered.height()) {
    throw Error(Errc::dimension_mismatch, "composite halves differ in size");
  }
  const int w = noisy.width();
  Image out = Image::gray(2 * w, noisy.height());
  for (int y = 0; y < noisy.height(); ++y) {
    auto dst = out.row(y);
    auto left = noisy.row(y);
    auto right = filtered.row(y);
    std::copy(left.begin(), left.end(), dst.begin());
    std::copy(right.begin(), right.end(), dst.begin() + w);
  }
  return out;
}

std::string frame_filename(int index) {
  char name[32];
  std::snprintf(name, sizeof name, "frame_%05d.pgm", index);
  return name;
}

double PipelineReport::total_seconds() const noexcept {
  double ms = 0.0;
  for (const auto& r : rows) ms += r.ms;
  return ms / 1000.0;
}

PipelineReport run_pipeline(const FrameSource& src, const NoiseSpec& noise,
                            const AdaptiveParams& params,
                            const std::filesystem::path& out_dir, int threads) {
  src.validate();
  params.validate();
  corrupted_count(noise.density, 1);  // validates the density

  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec || !std::filesystem::is_directory(out_dir)) {
    throw Error(Errc::io_failure, "cannot create " + out_dir.string());
  }

  PipelineReport report;
  report.fps_target = src.fps_target;
  report.rows.reserve(static_cast<std::size_t>(src.frame_count));
  const int margin = params.max_window / 2;

  for (int k = 0; k < src.frame_count; ++k) {
    const Image clean = src.frame(k);
    NoiseSpec spec = noise;
    spec.seed = frame_seed(noise.seed, k);

    const auto t0 = std::chrono::steady_clock::now();
    auto noisy = inject_impulse_noise(clean, spec);
    const Image filtered = adaptive_median_filter(noisy.image, params, threads);
    const Image composite = make_composite(noisy.image, filtered);
    const auto t1 = std::chrono::steady_clock::now();

    write_image(composite, out_dir / frame_filename(k));
    report.rows.push_back(
        {k, std::chrono::duration<double, std::milli>(t1 - t0).count(),
         count_residual_impulses(filtered, noisy.mask, margin)});
  }

  std::ofstream csv(out_dir / "report.csv", std::ios::trunc);
  csv << report_csv(report);
  if (!csv) throw Error(Errc::io_failure, "cannot write report.csv");
  return report;
}

FpsResult fps_report(const PipelineReport& report) {
  if (report.rows.empty()) {
    throw Error(Errc::empty_report, "pipeline report has no frames");
  }
  const double seconds = report.total_seconds();
  FpsResult r;
  r.fps_target = report.fps_target;
  r.achieved_fps = seconds > 0.0
                       ? static_cast<double>(report.rows.size()) / seconds
                       : std::numeric_limits<double>::infinity();
  r.pass = r.achieved_fps >= r.fps_target;
  return r;
}

std::string report_csv(const PipelineReport& report) {
  std::string out = "frame_index,ms,residual_impulses\n";
  char line[96];
  for (const auto& r : report.rows) {
    std::snprintf(line, sizeof line, "%d,%.3f,%zu\n", r.frame_index, r.ms,
                  r.residual_impulses);
    out += line;
  }
  return out;
}

}  // namespace scpa
