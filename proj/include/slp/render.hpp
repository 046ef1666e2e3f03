#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "slp/pose.hpp"

namespace slp {

/// 8-bit RGB, row-major.
struct Raster {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> rgb;

  Raster() = default;
  /// White canvas.
  Raster(int w, int h);
  void set(int x, int y, std::uint8_t r, std::uint8_t g, std::uint8_t b);
  const std::uint8_t* pixel(int x, int y) const {
    return &rgb[(static_cast<std::size_t>(y) * static_cast<std::size_t>(width) + static_cast<std::size_t>(x)) * 3];
  }
  bool operator==(const Raster&) const = default;
};

/// Isotropic pose-to-pixel mapping; pose y points up, pixel y points down.
struct Viewport {
  int width = 0;
  int height = 0;
  double cx = 0.0, cy = 0.0;
  double scale = 1.0;

  static constexpr double kMargin = 0.1;
  /// Fits the bounding box of the given joints (rows of J x dims frames) with
  /// a 10% margin on each side. A zero-extent box gets unit extent.
  static Viewport fit(const std::vector<PoseFrame>& frames, int width, int height);
  static Viewport fit(const PoseFrame& frame, int width, int height);
  /// One camera for every frame of the sequence.
  static Viewport fit(const PoseSequence& seq, int width, int height);

  /// Continuous pixel coordinates.
  double u(double x) const { return width / 2.0 + (x - cx) * scale; }
  double v(double y) const { return height / 2.0 - (y - cy) * scale; }
};

/// Limbs as 2-pixel Bresenham lines, joints as 3x3 black squares, white
/// background. Throws DegenerateInputError on non-finite coordinates.
Raster render_frame(const PoseFrame& frame, const SkeletonSpec& spec, int width, int height);
Raster render_frame(const PoseFrame& frame, const SkeletonSpec& spec, const Viewport& view);

/// Binary P6.
std::string encode_ppm(const Raster& raster);
Raster decode_ppm(const std::string& bytes);
void save_ppm(const Raster& raster, const std::filesystem::path& path);

/// Writes `frame_%06d.ppm` per frame under `out_dir`, all with the sequence viewport.
std::vector<std::filesystem::path> render_video(const PoseSequence& seq, const SkeletonSpec& spec, int width,
                                                int height, const std::filesystem::path& out_dir);

/// One W x H channel (rows = pixel y) per limb.
struct HeatmapStack {
  int width = 0;
  int height = 0;
  std::vector<Matrix> channels;
  bool operator==(const HeatmapStack& o) const { return width == o.width && height == o.height && channels == o.channels; }
};

/// 1.5% of the image width.
inline double default_sigma(int width) { return 0.015 * width; }

/// Channel l holds exp(-d^2 / 2 sigma^2), d the distance from the pixel to limb l's segment.
HeatmapStack pose_to_heatmap(const PoseFrame& frame, const SkeletonSpec& spec, int width, int height, double sigma);
HeatmapStack pose_to_heatmap(const PoseFrame& frame, const SkeletonSpec& spec, const Viewport& view, double sigma);

// HMAP1 text format: header `HMAP1 <channels> <W> <H>`, then one line per
// channel with W*H reals in row-major order.
void write_heatmap(std::ostream& out, const HeatmapStack& stack);
HeatmapStack read_heatmap(std::istream& in);
void save_heatmap(const HeatmapStack& stack, const std::filesystem::path& path);

}  // namespace slp
