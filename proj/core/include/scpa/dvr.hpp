#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "scpa/image.hpp"
#include "scpa/median.hpp"
#include "scpa/noise.hpp"
#include "scpa/synth.hpp"

namespace scpa {

struct Geometry {
  int width = 0;
  int height = 0;
  friend bool operator==(Geometry, Geometry) = default;
};

// "cif" 352x288, "ntsc" 640x480, "pal" 704x576, or an explicit "WxH".
Geometry parse_geometry(std::string_view preset);

// A single channel of frames: either an animated synthetic pattern or a
// sequence of grayscale PGM files (frame_count = number of files).
struct FrameSource {
  int width = 352;
  int height = 288;
  int frame_count = 30;
  Pattern pattern = Pattern::gradient;
  std::vector<std::filesystem::path> files;
  double fps_target = 30.0;

  static FrameSource synthetic(Geometry g, int frames, Pattern p,
                               double fps_target = 30.0);
  static FrameSource file_sequence(std::vector<std::filesystem::path> files,
                                   double fps_target = 30.0);

  void validate() const;
  Image frame(int index) const;
};

// seed_k = base XOR (k * 0x9E3779B97F4A7C15).
std::uint64_t frame_seed(std::uint64_t base, int index) noexcept;

// Noisy frame on the left, filtered frame on the right.
Image make_composite(const Image& noisy, const Image& filtered);

// "frame_00000.pgm" style names.
std::string frame_filename(int index);

struct FrameRow {
  int frame_index = 0;
  double ms = 0.0;
  std::size_t residual_impulses = 0;  // interior, margin max_window / 2
};

struct PipelineReport {
  std::vector<FrameRow> rows;
  double fps_target = 30.0;
  double total_seconds() const noexcept;
};

struct FpsResult {
  double achieved_fps = 0.0;
  double fps_target = 0.0;
  bool pass = false;
};

// Per frame: inject noise with frame_seed(noise.seed, k), run the adaptive
// median filter, and write the composite to out_dir/frame_%05d.pgm. Timing
// covers noise, filtering and compositing; file output is excluded.
// Writes out_dir/report.csv as well.
PipelineReport run_pipeline(const FrameSource& src, const NoiseSpec& noise,
                            const AdaptiveParams& params,
                            const std::filesystem::path& out_dir,
                            int threads = 1);

// achieved = frames / total seconds; pass iff achieved >= target.
FpsResult fps_report(const PipelineReport& report);

// "frame_index,ms,residual_impulses" rows.
std::string report_csv(const PipelineReport& report);

}  // namespace scpa
