#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "slp/error.hpp"

namespace slp {

using Index = Eigen::Index;

/// Row-major dense matrix; rows of a pose sequence are contiguous frames.
template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Matrix = MatrixX<double>;

struct SkeletonSpec {
  int joint_count = 0;
  int dims = 2;
  std::vector<std::pair<int, int>> limbs;

  /// Throws ShapeError on out-of-range or self-loop limbs. `for_render`
  /// additionally requires at least one limb.
  void validate(bool for_render = false) const;
  int width() const { return joint_count * dims; }

  bool operator==(const SkeletonSpec&) const = default;

  /// 10-joint 2D upper body: 0 mid-hip, 1 neck, 2 head, 3/4/5 right
  /// shoulder/elbow/wrist, 6/7/8 left shoulder/elbow/wrist, 9 chest.
  static SkeletonSpec upper_body();
  static constexpr int kUpperBodyRoot = 0;
  static constexpr std::pair<int, int> kUpperBodyShoulders{3, 6};

  /// Joints connected 0-1-2-...-(J-1).
  static SkeletonSpec chain(int joint_count, int dims);
};

/// One frame: joint_count x dims.
using PoseFrame = Matrix;

struct PoseSequence {
  SkeletonSpec spec;
  double fps = 25.0;
  /// frames x (joint_count * dims); frame i stores joint j at columns [j*dims, (j+1)*dims).
  Matrix data;

  PoseSequence() = default;
  PoseSequence(SkeletonSpec s, double f, Index frames = 0)
      : spec(std::move(s)), fps(f), data(Matrix::Zero(frames, spec.width())) {}

  Index size() const { return data.rows(); }
  bool empty() const { return data.rows() == 0; }

  PoseFrame frame(Index i) const {
    return Eigen::Map<const Matrix>(data.row(i).data(), spec.joint_count, spec.dims);
  }
  void set_frame(Index i, const PoseFrame& f);
  void append(const PoseFrame& f);

  /// Frames [begin, end).
  PoseSequence slice(Index begin, Index end) const;
  void validate() const;

  bool operator==(const PoseSequence& o) const {
    return spec == o.spec && fps == o.fps && data.rows() == o.data.rows() &&
           data.cols() == o.data.cols() && data == o.data;
  }
};

/// Gloss id -> trimmed dictionary sign. All entries share one skeleton.
class DictionaryStore {
 public:
  void add(const std::string& gloss, PoseSequence seq);
  const PoseSequence& at(const std::string& gloss) const;
  bool contains(const std::string& gloss) const { return entries_.count(gloss) != 0; }
  std::size_t size() const { return entries_.size(); }
  /// Sorted gloss ids.
  std::vector<std::string> glosses() const;
  const SkeletonSpec& spec() const { return spec_; }
  const std::map<std::string, PoseSequence>& entries() const { return entries_; }

  bool operator==(const DictionaryStore&) const = default;

 private:
  std::map<std::string, PoseSequence> entries_;
  SkeletonSpec spec_;
};

/// Where a frame of the interpolated dictionary sequence came from.
struct Provenance {
  enum class Kind { Sign, Interp };
  Kind kind = Kind::Sign;
  /// Sign: index of the sign within the stack. Interp: index of the block
  /// (block b sits between sign b and sign b+1).
  int index = 0;
  /// 1-based position within the sign (p) or the interpolation block (j).
  int position = 1;
  /// Sign length P, or the block length n_li.
  int length = 1;

  static Provenance sign(int w, int p, int len) { return {Kind::Sign, w, p, len}; }
  static Provenance interp(int b, int j, int n) { return {Kind::Interp, b, j, n}; }
  bool is_sign() const { return kind == Kind::Sign; }
  bool operator==(const Provenance&) const = default;
};

struct InterpolatedSequence {
  PoseSequence seq;
  std::vector<Provenance> provenance;

  Index size() const { return seq.size(); }
  /// Checks provenance length and block structure.
  void validate() const;
};

struct TrimResult {
  PoseSequence seq;
  bool is_static = false;
};

/// Mean per-joint Euclidean displacement from frame i to frame i+1; length size()-1.
Eigen::VectorXd motion_energy(const PoseSequence& seq);

/// Root joint moved to the origin in every frame; coordinates scaled so the
/// first frame's `scale_pair` distance is 1.
PoseSequence normalize_sequence(const PoseSequence& seq, int root_joint,
                                std::pair<int, int> scale_pair);

inline constexpr double kDefaultTrimThreshold = 0.02;

/// Keeps the contiguous span of frames whose motion energy exceeds
/// `energy_threshold`, plus one boundary frame on each side.
TrimResult trim_onset_offset(const PoseSequence& seq, double energy_threshold = kDefaultTrimThreshold);

/// `n` frames strictly between `a` and `b`: frame i (1-based) = a + i/(n+1) (b - a).
std::vector<PoseFrame> linear_interpolate(const PoseFrame& a, const PoseFrame& b, int n);

std::vector<PoseSequence> stack_dictionary(const std::vector<std::string>& glosses,
                                           const DictionaryStore& store);

inline constexpr int kDefaultInterpFrames = 5;

/// Concatenates the stack, bridging neighbouring signs with `n_li` linearly
/// interpolated frames. Q = sum(P_w) + (W - 1) * n_li.
InterpolatedSequence build_interpolated_sequence(const std::vector<PoseSequence>& stack,
                                                 int n_li = kDefaultInterpFrames);

/// Closed-form frame count of build_interpolated_sequence.
inline Index interpolated_length(const std::vector<Index>& sign_lengths, int n_li) {
  Index q = 0;
  for (auto p : sign_lengths) q += p;
  if (!sign_lengths.empty()) q += static_cast<Index>(sign_lengths.size() - 1) * n_li;
  return q;
}

}  // namespace slp
