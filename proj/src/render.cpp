#include "slp/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "slp/numtext.hpp"

namespace slp {

namespace {

constexpr std::uint8_t kLimbColor[3] = {40, 80, 200};

void check_frame(const PoseFrame& frame, const SkeletonSpec& spec) {
  if (frame.rows() != spec.joint_count || frame.cols() != spec.dims)
    throw ShapeError("frame is " + std::to_string(frame.rows()) + "x" + std::to_string(frame.cols()) +
                     ", skeleton expects " + std::to_string(spec.joint_count) + "x" + std::to_string(spec.dims));
  if (!frame.allFinite()) throw DegenerateInputError("pose coordinates are not finite");
}

double joint_x(const PoseFrame& f, Index j) { return f(j, 0); }
double joint_y(const PoseFrame& f, Index j) { return f.cols() > 1 ? f(j, 1) : 0.0; }

void check_size(int w, int h) {
  if (w <= 0 || h <= 0) throw ShapeError("image size must be positive");
}

void plot(Raster& r, int x, int y, const std::uint8_t* c) {
  if (x >= 0 && y >= 0 && x < r.width && y < r.height) r.set(x, y, c[0], c[1], c[2]);
}

void draw_line(Raster& r, int x0, int y0, int x1, int y1, const std::uint8_t* c) {
  const int dx = std::abs(x1 - x0), dy = -std::abs(y1 - y0);
  const int sx = x0 < x1 ? 1 : -1, sy = y0 < y1 ? 1 : -1;
  // Second pixel across the minor axis gives the line its 2-pixel width.
  const bool steep = -dy > dx;
  int err = dx + dy;
  while (true) {
    plot(r, x0, y0, c);
    if (steep)
      plot(r, x0 + 1, y0, c);
    else
      plot(r, x0, y0 + 1, c);
    if (x0 == x1 && y0 == y1) break;
    const int e2 = 2 * err;
    if (e2 >= dy) {
      err += dy;
      x0 += sx;
    }
    if (e2 <= dx) {
      err += dx;
      y0 += sy;
    }
  }
}

}  // namespace

Raster::Raster(int w, int h) : width(w), height(h) {
  check_size(w, h);
  rgb.assign(static_cast<std::size_t>(w) * static_cast<std::size_t>(h) * 3, 255);
}

void Raster::set(int x, int y, std::uint8_t r, std::uint8_t g, std::uint8_t b) {
  auto* p = &rgb[(static_cast<std::size_t>(y) * static_cast<std::size_t>(width) + static_cast<std::size_t>(x)) * 3];
  p[0] = r;
  p[1] = g;
  p[2] = b;
}

Viewport Viewport::fit(const std::vector<PoseFrame>& frames, int width, int height) {
  check_size(width, height);
  double xmin = INFINITY, xmax = -INFINITY, ymin = INFINITY, ymax = -INFINITY;
  for (const auto& f : frames) {
    if (!f.allFinite()) throw DegenerateInputError("pose coordinates are not finite");
    for (Index j = 0; j < f.rows(); ++j) {
      xmin = std::min(xmin, joint_x(f, j));
      xmax = std::max(xmax, joint_x(f, j));
      ymin = std::min(ymin, joint_y(f, j));
      ymax = std::max(ymax, joint_y(f, j));
    }
  }
  Viewport v;
  v.width = width;
  v.height = height;
  if (xmin > xmax) return v;
  v.cx = (xmin + xmax) / 2.0;
  v.cy = (ymin + ymax) / 2.0;
  const double extent_x = xmax - xmin, extent_y = ymax - ymin;
  double s = INFINITY;
  if (extent_x > 0) s = std::min(s, (1.0 - 2.0 * kMargin) * width / extent_x);
  if (extent_y > 0) s = std::min(s, (1.0 - 2.0 * kMargin) * height / extent_y);
  v.scale = std::isfinite(s) ? s : (1.0 - 2.0 * kMargin) * std::min(width, height);
  return v;
}

Viewport Viewport::fit(const PoseFrame& frame, int width, int height) {
  return fit(std::vector<PoseFrame>{frame}, width, height);
}

Viewport Viewport::fit(const PoseSequence& seq, int width, int height) {
  std::vector<PoseFrame> frames;
  frames.reserve(static_cast<std::size_t>(seq.size()));
  for (Index i = 0; i < seq.size(); ++i) frames.push_back(seq.frame(i));
  return fit(frames, width, height);
}

Raster render_frame(const PoseFrame& frame, const SkeletonSpec& spec, int width, int height) {
  check_frame(frame, spec);
  return render_frame(frame, spec, Viewport::fit(frame, width, height));
}

Raster render_frame(const PoseFrame& frame, const SkeletonSpec& spec, const Viewport& view) {
  check_frame(frame, spec);
  Raster r(view.width, view.height);
  auto px = [&](Index j) { return static_cast<int>(std::floor(view.u(joint_x(frame, j)))); };
  auto py = [&](Index j) { return static_cast<int>(std::floor(view.v(joint_y(frame, j)))); };
  for (const auto& [a, b] : spec.limbs) draw_line(r, px(a), py(a), px(b), py(b), kLimbColor);
  static constexpr std::uint8_t black[3] = {0, 0, 0};
  for (Index j = 0; j < frame.rows(); ++j)
    for (int dy = -1; dy <= 1; ++dy)
      for (int dx = -1; dx <= 1; ++dx) plot(r, px(j) + dx, py(j) + dy, black);
  return r;
}

std::string encode_ppm(const Raster& raster) {
  std::string out = "P6\n" + std::to_string(raster.width) + " " + std::to_string(raster.height) + "\n255\n";
  out.append(reinterpret_cast<const char*>(raster.rgb.data()), raster.rgb.size());
  return out;
}

Raster decode_ppm(const std::string& bytes) {
  std::istringstream in(bytes);
  std::string magic;
  int w = 0, h = 0, maxval = 0;
  if (!(in >> magic >> w >> h >> maxval) || magic != "P6" || maxval != 255) throw FormatError("not an 8-bit P6 image");
  in.get();
  Raster r(w, h);
  if (!in.read(reinterpret_cast<char*>(r.rgb.data()), static_cast<std::streamsize>(r.rgb.size())))
    throw FormatError("truncated P6 image");
  return r;
}

void save_ppm(const Raster& raster, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  const std::string bytes = encode_ppm(raster);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("failed writing " + path.string());
}

std::vector<std::filesystem::path> render_video(const PoseSequence& seq, const SkeletonSpec& spec, int width,
                                                int height, const std::filesystem::path& out_dir) {
  check_size(width, height);
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw IoError("cannot create " + out_dir.string() + ": " + ec.message());
  std::vector<std::filesystem::path> paths;
  if (seq.empty()) return paths;
  const Viewport view = Viewport::fit(seq, width, height);
  for (Index i = 0; i < seq.size(); ++i) {
    char name[32];
    std::snprintf(name, sizeof name, "frame_%06lld.ppm", static_cast<long long>(i));
    paths.push_back(out_dir / name);
    save_ppm(render_frame(seq.frame(i), spec, view), paths.back());
  }
  return paths;
}

HeatmapStack pose_to_heatmap(const PoseFrame& frame, const SkeletonSpec& spec, int width, int height, double sigma) {
  check_frame(frame, spec);
  return pose_to_heatmap(frame, spec, Viewport::fit(frame, width, height), sigma);
}

HeatmapStack pose_to_heatmap(const PoseFrame& frame, const SkeletonSpec& spec, const Viewport& view, double sigma) {
  check_frame(frame, spec);
  if (!(sigma > 0.0) || !std::isfinite(sigma)) throw ShapeError("sigma must be positive");
  HeatmapStack out;
  out.width = view.width;
  out.height = view.height;
  const double inv = 1.0 / (2.0 * sigma * sigma);
  for (const auto& [a, b] : spec.limbs) {
    const double ax = view.u(joint_x(frame, a)), ay = view.v(joint_y(frame, a));
    const double bx = view.u(joint_x(frame, b)), by = view.v(joint_y(frame, b));
    const double ex = bx - ax, ey = by - ay, len2 = ex * ex + ey * ey;
    Matrix ch(view.height, view.width);
    for (int y = 0; y < view.height; ++y) {
      for (int x = 0; x < view.width; ++x) {
        double t = len2 > 0.0 ? ((x - ax) * ex + (y - ay) * ey) / len2 : 0.0;
        t = std::clamp(t, 0.0, 1.0);
        const double dx = x - (ax + t * ex), dy = y - (ay + t * ey);
        ch(y, x) = std::exp(-(dx * dx + dy * dy) * inv);
      }
    }
    out.channels.push_back(std::move(ch));
  }
  return out;
}

void write_heatmap(std::ostream& out, const HeatmapStack& stack) {
  out << "HMAP1 " << stack.channels.size() << ' ' << stack.width << ' ' << stack.height << '\n';
  for (const auto& ch : stack.channels) {
    for (Index i = 0; i < ch.size(); ++i) {
      if (i) out << ' ';
      out << format_real(ch.data()[i]);
    }
    out << '\n';
  }
}

HeatmapStack read_heatmap(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("missing HMAP1 header", 1);
  const auto head = split_ws(line);
  if (head.size() != 4 || head[0] != "HMAP1") throw ParseError("expected 'HMAP1 <channels> <W> <H>'", 1);
  const auto n = parse_int<int>(head[1]), w = parse_int<int>(head[2]), h = parse_int<int>(head[3]);
  if (!n || !w || !h || *n < 0 || *w <= 0 || *h <= 0) throw ParseError("bad HMAP1 header", 1);
  HeatmapStack out;
  out.width = *w;
  out.height = *h;
  for (int c = 0; c < *n; ++c) {
    if (!std::getline(in, line)) throw ParseError("missing channel " + std::to_string(c), static_cast<std::size_t>(c + 2));
    const auto vals = split_ws(line);
    if (vals.size() != static_cast<std::size_t>(*w) * static_cast<std::size_t>(*h))
      throw ParseError("channel has " + std::to_string(vals.size()) + " values", static_cast<std::size_t>(c + 2));
    Matrix ch(*h, *w);
    for (std::size_t i = 0; i < vals.size(); ++i) {
      const auto v = parse_real(vals[i]);
      if (!v) throw ParseError("bad value '" + std::string(vals[i]) + "'", static_cast<std::size_t>(c + 2));
      ch.data()[i] = *v;
    }
    out.channels.push_back(std::move(ch));
  }
  return out;
}

void save_heatmap(const HeatmapStack& stack, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  write_heatmap(out, stack);
}

}  // namespace slp
