#include "slp/pose.hpp"

#include <cmath>

namespace slp {

void SkeletonSpec::validate(bool for_render) const {
  if (joint_count <= 0) throw ShapeError("skeleton needs a positive joint count");
  if (dims != 2 && dims != 3) throw ShapeError("skeleton dims must be 2 or 3");
  for (auto [a, b] : limbs) {
    if (a < 0 || b < 0 || a >= joint_count || b >= joint_count)
      throw ShapeError("limb (" + std::to_string(a) + "," + std::to_string(b) + ") out of range");
    if (a == b) throw ShapeError("self-loop limb at joint " + std::to_string(a));
  }
  if (for_render && limbs.empty()) throw ShapeError("skeleton has no limbs to draw");
}

SkeletonSpec SkeletonSpec::upper_body() {
  return {10, 2, {{0, 9}, {9, 1}, {1, 2}, {1, 3}, {3, 4}, {4, 5}, {1, 6}, {6, 7}, {7, 8}}};
}

SkeletonSpec SkeletonSpec::chain(int joint_count, int dims) {
  SkeletonSpec s{joint_count, dims, {}};
  for (int j = 0; j + 1 < joint_count; ++j) s.limbs.emplace_back(j, j + 1);
  return s;
}

void PoseSequence::set_frame(Index i, const PoseFrame& f) {
  if (f.rows() != spec.joint_count || f.cols() != spec.dims)
    throw ShapeError("frame shape does not match skeleton");
  data.row(i) = Eigen::Map<const Eigen::RowVectorXd>(f.data(), f.size());
}

void PoseSequence::append(const PoseFrame& f) {
  data.conservativeResize(data.rows() + 1, spec.width());
  set_frame(data.rows() - 1, f);
}

PoseSequence PoseSequence::slice(Index begin, Index end) const {
  PoseSequence out(spec, fps);
  out.data = data.middleRows(begin, end - begin);
  return out;
}

void PoseSequence::validate() const {
  spec.validate();
  if (!(fps > 0.0) || !std::isfinite(fps)) throw ShapeError("fps must be positive");
  if (data.cols() != spec.width()) throw ShapeError("frame width does not match skeleton");
  if (!data.allFinite()) throw DegenerateInputError("pose sequence contains non-finite values");
}

void DictionaryStore::add(const std::string& gloss, PoseSequence seq) {
  if (seq.empty()) throw ShapeError("dictionary entry '" + gloss + "' is empty");
  if (entries_.empty()) {
    spec_ = seq.spec;
  } else if (seq.spec.joint_count != spec_.joint_count || seq.spec.dims != spec_.dims) {
    throw ShapeError("dictionary entry '" + gloss + "' has a different skeleton");
  }
  entries_.insert_or_assign(gloss, std::move(seq));
}

const PoseSequence& DictionaryStore::at(const std::string& gloss) const {
  auto it = entries_.find(gloss);
  if (it == entries_.end()) throw LookupError(gloss);
  return it->second;
}

std::vector<std::string> DictionaryStore::glosses() const {
  std::vector<std::string> out;
  out.reserve(entries_.size());
  for (const auto& [g, _] : entries_) out.push_back(g);
  return out;
}

void InterpolatedSequence::validate() const {
  if (static_cast<Index>(provenance.size()) != seq.size())
    throw ShapeError("provenance length does not match frame count");
  for (std::size_t q = 0; q < provenance.size(); ++q) {
    const auto& pv = provenance[q];
    if (pv.position < 1 || pv.position > pv.length) throw ShapeError("provenance position out of range");
    if (pv.position > 1) {
      if (q == 0 || provenance[q - 1].kind != pv.kind || provenance[q - 1].index != pv.index ||
          provenance[q - 1].position != pv.position - 1)
        throw ShapeError("provenance positions are not contiguous");
    }
    if (!pv.is_sign()) {
      // An interpolation block must sit strictly between signs pv.index and pv.index+1.
      if (pv.position == 1 && (q == 0 || !provenance[q - 1].is_sign() || provenance[q - 1].index != pv.index))
        throw ShapeError("interpolation block does not follow its sign");
      if (pv.position == pv.length &&
          (q + 1 >= provenance.size() || !provenance[q + 1].is_sign() || provenance[q + 1].index != pv.index + 1))
        throw ShapeError("interpolation block does not precede the next sign");
    }
  }
}

Eigen::VectorXd motion_energy(const PoseSequence& seq) {
  const Index n = seq.size();
  Eigen::VectorXd e = Eigen::VectorXd::Zero(n > 0 ? n - 1 : 0);
  for (Index i = 0; i + 1 < n; ++i) {
    const PoseFrame d = seq.frame(i + 1) - seq.frame(i);
    e(i) = d.rowwise().norm().mean();
  }
  return e;
}

PoseSequence normalize_sequence(const PoseSequence& seq, int root_joint,
                                std::pair<int, int> scale_pair) {
  const int J = seq.spec.joint_count;
  auto in_range = [J](int j) { return j >= 0 && j < J; };
  if (!in_range(root_joint) || !in_range(scale_pair.first) || !in_range(scale_pair.second))
    throw ShapeError("normalization joint index out of range");
  if (seq.empty()) return seq;

  const PoseFrame first = seq.frame(0);
  const double dist = (first.row(scale_pair.first) - first.row(scale_pair.second)).norm();
  if (!(dist > 0.0) || !std::isfinite(dist))
    throw DegenerateInputError("scale joints coincide in the first frame");

  PoseSequence out = seq;
  for (Index i = 0; i < seq.size(); ++i) {
    PoseFrame f = seq.frame(i);
    f = (f.rowwise() - f.row(root_joint)).eval() / dist;
    out.set_frame(i, f);
  }
  return out;
}

TrimResult trim_onset_offset(const PoseSequence& seq, double energy_threshold) {
  if (seq.size() < 2) throw ShapeError("trimming needs at least two frames");
  const Eigen::VectorXd energy = motion_energy(seq);
  Index first = -1, last = -1;
  for (Index i = 0; i < energy.size(); ++i) {
    if (energy(i) > energy_threshold) {
      if (first < 0) first = i;
      last = i;
    }
  }
  if (first < 0) return {seq, true};
  const Index begin = std::max<Index>(0, first - 1);
  const Index end = std::min<Index>(seq.size(), last + 2);
  return {seq.slice(begin, end), false};
}

std::vector<PoseFrame> linear_interpolate(const PoseFrame& a, const PoseFrame& b, int n) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw ShapeError("interpolation endpoints differ in shape");
  if (n < 0) throw ShapeError("negative interpolation count");
  std::vector<PoseFrame> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int i = 1; i <= n; ++i) {
    const double alpha = static_cast<double>(i) / static_cast<double>(n + 1);
    out.push_back(a + alpha * (b - a));
  }
  return out;
}

std::vector<PoseSequence> stack_dictionary(const std::vector<std::string>& glosses,
                                           const DictionaryStore& store) {
  std::vector<PoseSequence> out;
  out.reserve(glosses.size());
  for (const auto& g : glosses) out.push_back(store.at(g));
  return out;
}

InterpolatedSequence build_interpolated_sequence(const std::vector<PoseSequence>& stack, int n_li) {
  if (stack.empty()) throw ShapeError("cannot interpolate an empty stack");
  if (n_li < 0) throw ShapeError("negative interpolation count");
  const SkeletonSpec& spec = stack.front().spec;
  std::vector<Index> lengths;
  for (const auto& s : stack) {
    if (s.spec.joint_count != spec.joint_count || s.spec.dims != spec.dims)
      throw ShapeError("stacked signs use different skeletons");
    if (s.empty()) throw ShapeError("stacked sign is empty");
    lengths.push_back(s.size());
  }

  InterpolatedSequence out;
  out.seq = PoseSequence(spec, stack.front().fps, interpolated_length(lengths, n_li));
  out.provenance.reserve(static_cast<std::size_t>(out.seq.size()));
  Index q = 0;
  for (std::size_t w = 0; w < stack.size(); ++w) {
    const auto& sign = stack[w];
    const int len = static_cast<int>(sign.size());
    out.seq.data.middleRows(q, len) = sign.data;
    for (int p = 1; p <= len; ++p) out.provenance.push_back(Provenance::sign(static_cast<int>(w), p, len));
    q += len;
    if (w + 1 < stack.size()) {
      const auto bridge = linear_interpolate(sign.frame(len - 1), stack[w + 1].frame(0), n_li);
      for (int j = 0; j < n_li; ++j) {
        out.seq.set_frame(q++, bridge[static_cast<std::size_t>(j)]);
        out.provenance.push_back(Provenance::interp(static_cast<int>(w), j + 1, n_li));
      }
    }
  }
  return out;
}

}  // namespace slp
