#include "slp/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>

#include "slp/hash.hpp"
#include "slp/random.hpp"

namespace slp {

namespace {

// Stream tags keep the generators independent of one another.
constexpr std::uint64_t kDictionaryStream = 1;
constexpr std::uint64_t kTrimStream = 2;
constexpr std::uint64_t kDropStream = 3;
constexpr std::uint64_t kInterpStream = 4;
constexpr std::uint64_t kSegmentStream = 5;
constexpr std::uint64_t kMoverStream = 6;
constexpr std::uint64_t kTextStream = 7;

std::uint64_t stream(const SyntheticConfig& cfg, std::uint64_t tag) { return mix_seed(cfg.seed, tag); }

std::uint64_t token_key(const std::string& s) {
  Fnv1a h;
  h.update(s);
  return h.digest();
}

Matrix rest_pose(const SkeletonSpec& spec, Rng& rng) {
  Matrix base(spec.joint_count, spec.dims);
  if (spec == SkeletonSpec::upper_body()) {
    base << 0.0, -1.5,  //
        0.0, 0.0,       //
        0.0, 0.6,       //
        -0.5, 0.0,      //
        -0.7, -0.6,     //
        -0.4, -1.0,     //
        0.5, 0.0,       //
        0.7, -0.6,      //
        0.4, -1.0,      //
        0.0, -0.6;
    return base;
  }
  for (Index j = 0; j < base.rows(); ++j)
    for (Index d = 0; d < base.cols(); ++d) base(j, d) = rng.uniform(-1.0, 1.0);
  return base;
}

std::pair<int, int> sign_trims(const SyntheticConfig& cfg, const std::string& gloss) {
  Rng rng(mix_seed(stream(cfg, kTrimStream), token_key(gloss)));
  const int head = static_cast<int>(rng.integer(cfg.trim_min, cfg.trim_max));
  const int tail = static_cast<int>(rng.integer(cfg.trim_min, cfg.trim_max));
  return {head, tail};
}

}  // namespace

void SyntheticConfig::validate() const {
  skeleton.validate();
  if (vocab_size < 1) throw ShapeError("vocab_size must be at least 1");
  if (sign_min_frames < 1 || sign_min_frames > sign_max_frames) throw ShapeError("bad sign length range");
  if (components < 1) throw ShapeError("components must be at least 1");
  if (!(amplitude >= 0.0) || !(max_frequency >= 0.0)) throw ShapeError("amplitude and frequency must be >= 0");
  if (n_li < 0) throw ShapeError("n_li must be >= 0");
  if (!(drop_prob >= 0.0 && drop_prob <= 1.0)) throw ShapeError("drop_prob must lie in [0, 1]");
  if (trim_min < 0 || trim_min > trim_max) throw ShapeError("bad trim range");
  if (crossfade_frames < 0) throw ShapeError("crossfade_frames must be >= 0");
  if (segment_min_glosses < 1 || segment_min_glosses > segment_max_glosses)
    throw ShapeError("bad segment length range");
  if (text_vocab_size < 1) throw ShapeError("text_vocab_size must be at least 1");
  if (text_min_len < 1 || text_min_len > text_max_len) throw ShapeError("bad text length range");
  if (!(mover_fraction >= 0.0 && mover_fraction < 1.0)) throw ShapeError("mover_fraction must lie in [0, 1)");
  if (!(filler_rate >= 0.0 && filler_rate <= 1.0)) throw ShapeError("filler_rate must lie in [0, 1]");
  if (filler_rate > 0.0 && filler_vocab_size < 1) throw ShapeError("fillers need a non-empty filler vocabulary");
}

std::string gloss_name(int index) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "G%03d", index);
  return buf;
}

std::string filler_name(int index) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "x%02d", index);
  return buf;
}

double coordinate_step_bound(const SyntheticConfig& cfg) { return cfg.amplitude * 2.0 * M_PI * cfg.max_frequency; }

DictionaryStore gen_dictionary(const SyntheticConfig& cfg) {
  cfg.validate();
  DictionaryStore store;
  const auto& spec = cfg.skeleton;
  for (int g = 0; g < cfg.vocab_size; ++g) {
    Rng rng(mix_seed(stream(cfg, kDictionaryStream), static_cast<std::uint64_t>(g)));
    const int len = static_cast<int>(rng.integer(cfg.sign_min_frames, cfg.sign_max_frames));
    const Matrix base = rest_pose(spec, rng);
    const Index width = spec.width();
    Matrix amp(cfg.components, width), freq(cfg.components, width), phase(cfg.components, width);
    for (Index c = 0; c < width; ++c) {
      for (int k = 0; k < cfg.components; ++k) {
        amp(k, c) = rng.uniform(0.0, cfg.amplitude / cfg.components);
        freq(k, c) = rng.uniform(0.0, cfg.max_frequency);
        phase(k, c) = rng.uniform(0.0, 2.0 * M_PI);
      }
    }
    PoseSequence seq(spec, 25.0, len);
    for (int p = 0; p < len; ++p) {
      for (Index c = 0; c < width; ++c) {
        double v = base(c / spec.dims, c % spec.dims);
        for (int k = 0; k < cfg.components; ++k) v += amp(k, c) * std::sin(2.0 * M_PI * freq(k, c) * p + phase(k, c));
        seq.data(p, c) = v;
      }
    }
    store.add(gloss_name(g), std::move(seq));
  }
  return store;
}

bool sign_frame_dropped(const SyntheticConfig& cfg, const std::string& gloss, int p, int length) {
  const auto [head, tail] = sign_trims(cfg, gloss);
  if (p <= head || p > length - tail) return true;
  Rng rng(mix_seed(stream(cfg, kDropStream) ^ token_key(gloss), static_cast<std::uint64_t>(p)));
  return rng.uniform() < cfg.drop_prob;
}

bool interp_frame_dropped(const SyntheticConfig& cfg, int j) {
  const int n = cfg.n_li, c = std::min(cfg.crossfade_frames, cfg.n_li);
  for (int k = 1; k <= c; ++k)
    if (j == (k * (n + 1) + (c + 1) / 2) / (c + 1)) return false;
  Rng rng(mix_seed(stream(cfg, kInterpStream), static_cast<std::uint64_t>(j)));
  return rng.uniform() < cfg.drop_prob;
}

ContinuousSample gen_continuous(const SyntheticConfig& cfg, const DictionaryStore& store,
                                const std::vector<std::string>& glosses) {
  cfg.validate();
  ContinuousSample out;
  out.interp = build_interpolated_sequence(stack_dictionary(glosses, store), cfg.n_li);
  const auto Q = static_cast<std::size_t>(out.interp.size());
  out.gt_mask = SelectionMask(Q);
  std::vector<bool> sign_kept(glosses.size(), false);
  for (std::size_t q = 0; q < Q; ++q) {
    const Provenance& pv = out.interp.provenance[q];
    bool drop;
    if (pv.is_sign()) {
      drop = sign_frame_dropped(cfg, glosses[static_cast<std::size_t>(pv.index)], pv.position, pv.length);
      if (!drop) sign_kept[static_cast<std::size_t>(pv.index)] = true;
    } else {
      drop = interp_frame_dropped(cfg, pv.position);
    }
    out.gt_mask.bits[q] = drop ? 0 : 1;
  }
  for (std::size_t q = 0; q < Q; ++q) {
    const Provenance& pv = out.interp.provenance[q];
    if (pv.is_sign() && !sign_kept[static_cast<std::size_t>(pv.index)] && pv.position == (pv.length + 1) / 2)
      out.gt_mask.bits[q] = 1;
  }
  if (Q > 0) out.gt_mask.bits[Q - 1] = 1;
  out.target = apply_selection(out.interp, out.gt_mask);
  return out;
}

std::vector<std::string> gen_gloss_sequence(const SyntheticConfig& cfg, const std::vector<std::string>& vocabulary,
                                            std::uint64_t index) {
  if (vocabulary.empty()) throw ShapeError("empty gloss vocabulary");
  Rng rng(mix_seed(stream(cfg, kSegmentStream), index));
  const auto n = rng.integer(cfg.segment_min_glosses, cfg.segment_max_glosses);
  std::vector<std::string> out;
  for (std::int64_t i = 0; i < n; ++i)
    out.push_back(vocabulary[static_cast<std::size_t>(rng.integer(0, static_cast<std::int64_t>(vocabulary.size()) - 1))]);
  return out;
}

std::vector<std::string> mover_glosses(const SyntheticConfig& cfg) {
  const int V = cfg.text_vocab_size;
  const int count = std::min(V - 1, static_cast<int>(std::lround(cfg.mover_fraction * V)));
  std::vector<int> ids(static_cast<std::size_t>(V));
  for (int i = 0; i < V; ++i) ids[static_cast<std::size_t>(i)] = i;
  Rng rng(stream(cfg, kMoverStream));
  for (int i = 0; i < count; ++i)
    std::swap(ids[static_cast<std::size_t>(i)], ids[static_cast<std::size_t>(rng.integer(i, V - 1))]);
  std::vector<std::string> out;
  for (int i = 0; i < count; ++i) out.push_back(gloss_name(ids[static_cast<std::size_t>(i)]));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<TextPair> gen_parallel_text(const SyntheticConfig& cfg, std::size_t count, std::uint64_t first_index) {
  cfg.validate();
  const auto movers_list = mover_glosses(cfg);
  const std::set<std::string> movers(movers_list.begin(), movers_list.end());
  std::vector<std::string> all, stable;
  for (int i = 0; i < cfg.text_vocab_size; ++i) {
    all.push_back(gloss_name(i));
    if (!movers.count(all.back())) stable.push_back(all.back());
  }
  auto draw = [](Rng& rng, const std::vector<std::string>& from) {
    return from[static_cast<std::size_t>(rng.integer(0, static_cast<std::int64_t>(from.size()) - 1))];
  };

  std::vector<TextPair> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    Rng rng(mix_seed(stream(cfg, kTextStream), first_index + i));
    const auto len = rng.integer(cfg.text_min_len, cfg.text_max_len);
    TextPair pair;
    for (std::int64_t k = 0; k < len; ++k) {
      const bool need_stable = k == len - 1 || (k > 0 && movers.count(pair.gloss.back()));
      pair.gloss.push_back(draw(rng, need_stable ? stable : all));
    }
    auto emit = [&](const std::string& word) {
      pair.spoken.push_back(word);
      if (rng.bernoulli(cfg.filler_rate))
        pair.spoken.push_back(filler_name(static_cast<int>(rng.integer(0, cfg.filler_vocab_size - 1))));
    };
    for (std::size_t k = 0; k < pair.gloss.size(); ++k) {
      if (movers.count(pair.gloss[k])) {
        emit(pair.gloss[k + 1]);
        emit(pair.gloss[k]);
        ++k;
      } else {
        emit(pair.gloss[k]);
      }
    }
    out.push_back(std::move(pair));
  }
  return out;
}

std::vector<std::string> recover_gloss(const SyntheticConfig& cfg, const std::vector<std::string>& spoken) {
  const auto movers_list = mover_glosses(cfg);
  const std::set<std::string> movers(movers_list.begin(), movers_list.end());
  std::set<std::string> fillers;
  for (int i = 0; i < cfg.filler_vocab_size; ++i) fillers.insert(filler_name(i));
  std::vector<std::string> content;
  for (const auto& w : spoken)
    if (!fillers.count(w)) content.push_back(w);
  std::vector<std::string> out;
  for (std::size_t i = 0; i < content.size(); ++i) {
    if (i + 1 < content.size() && !movers.count(content[i]) && movers.count(content[i + 1])) {
      out.push_back(content[i + 1]);
      out.push_back(content[i]);
      ++i;
    } else {
      out.push_back(content[i]);
    }
  }
  return out;
}

}  // namespace slp
