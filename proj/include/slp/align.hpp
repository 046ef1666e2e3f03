#pragma once

#include <algorithm>
#include <iosfwd>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "slp/pose.hpp"

namespace slp {

/// Q x T matrix of non-negative local costs.
using CostMatrix = Matrix;

struct AlignmentPath2D {
  /// (q, t) pairs from (0, 0) to (Q-1, T-1).
  std::vector<std::pair<Index, Index>> pairs;
  double total_cost = 0.0;

  /// Checks endpoints, unit steps and that total_cost is the summed cost along the path.
  bool is_valid_for(const CostMatrix& costs) const;
};

struct SelectionMask {
  std::vector<unsigned char> bits;

  SelectionMask() = default;
  explicit SelectionMask(std::size_t n, bool value = false) : bits(n, value ? 1 : 0) {}
  static SelectionMask from_bits(std::vector<unsigned char> b) {
    SelectionMask m;
    m.bits = std::move(b);
    return m;
  }

  std::size_t size() const { return bits.size(); }
  bool operator[](std::size_t i) const { return bits[i] != 0; }
  std::size_t selected_count() const;
  /// Selected indices in increasing order.
  std::vector<Index> indices() const;
  /// Dense T x Q one-hot selection matrix (row k picks the k-th selected frame).
  Matrix selection_matrix() const;

  bool operator==(const SelectionMask&) const = default;
};

/// One line of space-separated 0/1 digits.
std::string format_mask(const SelectionMask& mask);
SelectionMask parse_mask(const std::string& line);
void save_mask(const SelectionMask& mask, const std::string& path);
SelectionMask load_mask(const std::string& path);

/// Euclidean norm of the coordinate difference divided by the joint count.
double frame_distance(const PoseFrame& a, const PoseFrame& b);

/// Pairwise frame_distance between every frame of `a` (rows) and `b` (columns).
CostMatrix pairwise_costs(const PoseSequence& a, const PoseSequence& b);

/// Minimum-cost monotonic alignment with steps (1,0), (0,1), (1,1).
/// Ties during backtracking prefer the diagonal, then the q-advance step.
template <typename Derived>
AlignmentPath2D dtw(const Eigen::MatrixBase<Derived>& costs) {
  using Scalar = typename Derived::Scalar;
  const Index Q = costs.rows(), T = costs.cols();
  if (Q < 1 || T < 1) throw ShapeError("DTW needs a non-empty cost matrix");
  if (!costs.allFinite()) throw DegenerateInputError("DTW cost matrix is not finite");

  MatrixX<Scalar> acc(Q, T);
  for (Index q = 0; q < Q; ++q) {
    for (Index t = 0; t < T; ++t) {
      const Scalar c = costs(q, t);
      if (q == 0 && t == 0) {
        acc(q, t) = c;
        continue;
      }
      Scalar best = std::numeric_limits<Scalar>::infinity();
      if (q > 0 && t > 0) best = acc(q - 1, t - 1);
      if (q > 0) best = std::min(best, acc(q - 1, t));
      if (t > 0) best = std::min(best, acc(q, t - 1));
      acc(q, t) = best + c;
    }
  }

  AlignmentPath2D path;
  Index q = Q - 1, t = T - 1;
  path.pairs.emplace_back(q, t);
  while (q > 0 || t > 0) {
    if (q > 0 && t > 0) {
      const Scalar diag = acc(q - 1, t - 1), up = acc(q - 1, t), left = acc(q, t - 1);
      if (diag <= up && diag <= left) {
        --q, --t;
      } else if (up <= left) {
        --q;
      } else {
        --t;
      }
    } else if (q > 0) {
      --q;
    } else {
      --t;
    }
    path.pairs.emplace_back(q, t);
  }
  std::reverse(path.pairs.begin(), path.pairs.end());
  path.total_cost = static_cast<double>(acc(Q - 1, T - 1));
  return path;
}

/// Collapses a 2D path onto the Q axis: for every output frame t, the path
/// cell (q, t) of least cost (smallest q on ties) is selected. An input frame
/// aligned to several outputs is selected once.
template <typename Derived>
SelectionMask collapse_path(const AlignmentPath2D& path, const Eigen::MatrixBase<Derived>& costs) {
  const Index Q = costs.rows(), T = costs.cols();
  if (path.pairs.empty() || path.pairs.back().first != Q - 1 || path.pairs.back().second != T - 1)
    throw ShapeError("path does not match cost matrix dimensions");
  SelectionMask mask(static_cast<std::size_t>(Q));
  std::size_t i = 0;
  while (i < path.pairs.size()) {
    const Index t = path.pairs[i].second;
    Index best_q = path.pairs[i].first;
    for (; i < path.pairs.size() && path.pairs[i].second == t; ++i) {
      const Index q = path.pairs[i].first;
      if (costs(q, t) < costs(best_q, t)) best_q = q;
    }
    mask.bits[static_cast<std::size_t>(best_q)] = 1;
  }
  return mask;
}

/// Selected frames of the interpolated sequence, in order. Equivalent to the
/// product of the one-hot selection matrix with the frame matrix.
PoseSequence apply_selection(const InterpolatedSequence& iseq, const SelectionMask& mask);
PoseSequence apply_selection(const PoseSequence& seq, const SelectionMask& mask);

struct AlignmentMetrics {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  double frame_accuracy = 0.0;
};

/// Per-frame select/skip classification metrics. A class with no members on
/// either side scores 1 (nothing to find, nothing wrongly found).
AlignmentMetrics alignment_metrics(const SelectionMask& pred, const SelectionMask& truth);

/// DTW total cost divided by path length: mean per-frame distance after alignment.
double dtw_distance(const PoseSequence& a, const PoseSequence& b);

}  // namespace slp
