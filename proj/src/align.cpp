#include "slp/align.hpp"

#include <fstream>
#include <sstream>

#include "slp/numtext.hpp"

namespace slp {

bool AlignmentPath2D::is_valid_for(const CostMatrix& costs) const {
  if (pairs.empty()) return false;
  if (pairs.front() != std::pair<Index, Index>{0, 0}) return false;
  if (pairs.back() != std::pair<Index, Index>{costs.rows() - 1, costs.cols() - 1}) return false;
  double sum = 0.0;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    if (i > 0) {
      const Index dq = pairs[i].first - pairs[i - 1].first;
      const Index dt = pairs[i].second - pairs[i - 1].second;
      if (dq < 0 || dt < 0 || dq > 1 || dt > 1 || dq + dt == 0) return false;
    }
    sum += costs(pairs[i].first, pairs[i].second);
  }
  return sum == total_cost;
}

std::size_t SelectionMask::selected_count() const {
  std::size_t n = 0;
  for (auto b : bits) n += b ? 1 : 0;
  return n;
}

std::vector<Index> SelectionMask::indices() const {
  std::vector<Index> out;
  for (std::size_t i = 0; i < bits.size(); ++i)
    if (bits[i]) out.push_back(static_cast<Index>(i));
  return out;
}

Matrix SelectionMask::selection_matrix() const {
  const auto idx = indices();
  Matrix m = Matrix::Zero(static_cast<Index>(idx.size()), static_cast<Index>(bits.size()));
  for (std::size_t k = 0; k < idx.size(); ++k) m(static_cast<Index>(k), idx[k]) = 1.0;
  return m;
}

std::string format_mask(const SelectionMask& mask) {
  std::string s;
  for (std::size_t i = 0; i < mask.size(); ++i) {
    if (i) s += ' ';
    s += mask[i] ? '1' : '0';
  }
  return s;
}

SelectionMask parse_mask(const std::string& line) {
  SelectionMask m;
  for (auto tok : split_ws(line)) {
    if (tok == "1") m.bits.push_back(1);
    else if (tok == "0") m.bits.push_back(0);
    else throw ParseError("mask entries must be 0 or 1");
  }
  return m;
}

void save_mask(const SelectionMask& mask, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  out << format_mask(mask) << '\n';
}

SelectionMask load_mask(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  std::string line;
  std::getline(in, line);
  return parse_mask(line);
}

double frame_distance(const PoseFrame& a, const PoseFrame& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw ShapeError("frame shapes differ");
  return (a - b).norm() / static_cast<double>(a.rows());
}

CostMatrix pairwise_costs(const PoseSequence& a, const PoseSequence& b) {
  if (a.spec.joint_count != b.spec.joint_count || a.spec.dims != b.spec.dims)
    throw ShapeError("sequences use different skeletons");
  const double J = static_cast<double>(a.spec.joint_count);
  // ||x - y||^2 expanded is cheaper but loses exactness for identical frames.
  CostMatrix c(a.size(), b.size());
  for (Index q = 0; q < a.size(); ++q)
    for (Index t = 0; t < b.size(); ++t) c(q, t) = (a.data.row(q) - b.data.row(t)).norm() / J;
  return c;
}

PoseSequence apply_selection(const PoseSequence& seq, const SelectionMask& mask) {
  if (static_cast<Index>(mask.size()) != seq.size())
    throw ShapeError("mask length " + std::to_string(mask.size()) + " does not match " +
                     std::to_string(seq.size()) + " frames");
  const auto idx = mask.indices();
  PoseSequence out(seq.spec, seq.fps);
  out.data = seq.data(idx, Eigen::all);
  return out;
}

PoseSequence apply_selection(const InterpolatedSequence& iseq, const SelectionMask& mask) {
  return apply_selection(iseq.seq, mask);
}

AlignmentMetrics alignment_metrics(const SelectionMask& pred, const SelectionMask& truth) {
  if (pred.size() != truth.size()) throw ShapeError("mask lengths differ");
  double tp = 0, fp = 0, fn = 0, tn = 0;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    if (pred[i] && truth[i]) ++tp;
    else if (pred[i]) ++fp;
    else if (truth[i]) ++fn;
    else ++tn;
  }
  AlignmentMetrics m;
  m.precision = (tp + fp > 0) ? tp / (tp + fp) : (tp + fn > 0 ? 0.0 : 1.0);
  m.recall = (tp + fn > 0) ? tp / (tp + fn) : (tp + fp > 0 ? 0.0 : 1.0);
  m.f1 = (m.precision + m.recall > 0) ? 2.0 * m.precision * m.recall / (m.precision + m.recall) : 0.0;
  m.frame_accuracy = pred.size() ? (tp + tn) / static_cast<double>(pred.size()) : 1.0;
  return m;
}

double dtw_distance(const PoseSequence& a, const PoseSequence& b) {
  const auto path = dtw(pairwise_costs(a, b));
  return path.total_cost / static_cast<double>(path.pairs.size());
}

}  // namespace slp
