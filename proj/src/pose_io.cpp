#include "slp/pose_io.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "slp/numtext.hpp"

namespace slp {

PoseSequence read_pose_sequence(std::istream& in, const SkeletonSpec* skeleton) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("missing POSE1 header", 1);
  const auto head = split_ws(line);
  if (head.size() != 4 || head[0] != "POSE1") throw ParseError("malformed POSE1 header", 1);
  const auto J = parse_int<int>(head[1]);
  const auto dims = parse_int<int>(head[2]);
  const auto fps = parse_real(head[3]);
  if (!J || *J <= 0 || !dims || (*dims != 2 && *dims != 3) || !fps || !(*fps > 0.0) || !std::isfinite(*fps))
    throw ParseError("malformed POSE1 header", 1);

  SkeletonSpec spec{*J, *dims, {}};
  if (skeleton && skeleton->joint_count == *J && skeleton->dims == *dims) spec = *skeleton;

  const int width = *J * *dims;
  std::vector<double> values;
  Index frames = 0;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    const auto toks = split_ws(line);
    if (static_cast<int>(toks.size()) != width)
      throw ParseError("expected " + std::to_string(width) + " values, found " + std::to_string(toks.size()),
                       lineno);
    for (auto t : toks) {
      const auto v = parse_real(t);
      if (!v) throw ParseError("not a number: '" + std::string(t) + "'", lineno);
      if (!std::isfinite(*v)) throw ParseError("non-finite value", lineno);
      values.push_back(*v);
    }
    ++frames;
  }
  PoseSequence seq(spec, *fps);
  seq.data = Eigen::Map<const Matrix>(values.data(), frames, width);
  return seq;
}

void write_pose_sequence(std::ostream& out, const PoseSequence& seq) {
  out << "POSE1 " << seq.spec.joint_count << ' ' << seq.spec.dims << ' ' << format_real(seq.fps) << '\n';
  for (Index i = 0; i < seq.size(); ++i) {
    for (Index c = 0; c < seq.data.cols(); ++c) {
      if (c) out << ' ';
      out << format_real(seq.data(i, c));
    }
    out << '\n';
  }
}

PoseSequence load_pose_sequence(const std::filesystem::path& path, const SkeletonSpec* skeleton) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  try {
    return read_pose_sequence(in, skeleton);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what(), e.line());
  }
}

void save_pose_sequence(const PoseSequence& seq, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  write_pose_sequence(out, seq);
  if (!out) throw IoError("write failed: " + path.string());
}

DictionaryStore load_dictionary(const std::filesystem::path& manifest, const SkeletonSpec* skeleton) {
  std::ifstream in(manifest);
  if (!in) throw IoError("cannot open " + manifest.string());
  DictionaryStore store;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto t = trim(line);
    if (t.empty()) continue;
    const auto comma = t.find(',');
    if (comma == std::string_view::npos) throw ParseError("expected gloss_id,pose_path", lineno);
    const std::string gloss(trim(t.substr(0, comma)));
    std::filesystem::path p(std::string(trim(t.substr(comma + 1))));
    if (p.is_relative()) p = manifest.parent_path() / p;
    store.add(gloss, load_pose_sequence(p, skeleton));
  }
  return store;
}

}  // namespace slp
