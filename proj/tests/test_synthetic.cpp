#include <gtest/gtest.h>

#include <set>

#include "slp/synthetic.hpp"
#include "support.hpp"

using namespace slp;

namespace {

std::vector<std::string> dictionary_glosses(const SyntheticConfig& cfg) {
  std::vector<std::string> v;
  for (int g = 0; g < cfg.vocab_size; ++g) v.push_back(gloss_name(g));
  return v;
}

}  // namespace

TEST(Dictionary, SizeAndDeterminism) {
  SyntheticConfig cfg;
  cfg.vocab_size = 1;
  EXPECT_EQ(gen_dictionary(cfg).size(), 1u);
  cfg.vocab_size = 12;
  EXPECT_EQ(gen_dictionary(cfg), gen_dictionary(cfg));
  auto other = cfg;
  other.seed = 43;
  EXPECT_NE(gen_dictionary(cfg), gen_dictionary(other));
}

TEST(Dictionary, LengthsAndSmoothness) {
  SyntheticConfig cfg;
  const auto store = gen_dictionary(cfg);
  const double bound = coordinate_step_bound(cfg);
  for (const auto& [g, seq] : store.entries()) {
    EXPECT_GE(seq.size(), cfg.sign_min_frames);
    EXPECT_LE(seq.size(), cfg.sign_max_frames);
    for (Index i = 1; i < seq.size(); ++i)
      EXPECT_LE((seq.data.row(i) - seq.data.row(i - 1)).cwiseAbs().maxCoeff(), bound + 1e-12);
  }
}

TEST(Continuous, NoDropIsIdentity) {
  SyntheticConfig cfg;
  cfg.drop_prob = 0.0;
  cfg.trim_max = 0;
  const auto store = gen_dictionary(cfg);
  const auto s = gen_continuous(cfg, store, {"G001", "G004", "G001"});
  EXPECT_EQ(s.gt_mask, SelectionMask(static_cast<std::size_t>(s.interp.size()), true));
  EXPECT_EQ(s.target, s.interp.seq);
}

TEST(Continuous, DropAllKeepsOnlyGuards) {
  SyntheticConfig cfg;
  cfg.drop_prob = 1.0;
  const auto store = gen_dictionary(cfg);
  const auto s = gen_continuous(cfg, store, {"G002", "G003", "G007"});
  const std::size_t Q = static_cast<std::size_t>(s.interp.size());
  for (std::size_t q = 0; q < Q; ++q) {
    const auto& pv = s.interp.provenance[q];
    const bool guard = q + 1 == Q || (pv.is_sign() && pv.position == (pv.length + 1) / 2) ||
                       (!pv.is_sign() && !interp_frame_dropped(cfg, pv.position));
    EXPECT_EQ(s.gt_mask[q], guard) << "frame " << q;
  }
  // One middle frame per sign, one cross-fade frame per transition, plus the end.
  EXPECT_EQ(s.gt_mask.selected_count(), 3u + 2u + 1u);
}

TEST(Continuous, TargetIsSelectionOfInterp) {
  SyntheticConfig cfg;
  const auto store = gen_dictionary(cfg);
  const auto vocab = dictionary_glosses(cfg);
  for (std::uint64_t i = 0; i < 100; ++i) {
    const auto s = gen_continuous(cfg, store, gen_gloss_sequence(cfg, vocab, i));
    ASSERT_EQ(apply_selection(s.interp, s.gt_mask), s.target);
    ASSERT_TRUE(s.gt_mask[s.gt_mask.size() - 1]);
  }
}

TEST(Continuous, DropScheduleIsPerGlossAndPosition) {
  SyntheticConfig cfg;
  const auto store = gen_dictionary(cfg);
  const auto a = gen_continuous(cfg, store, {"G005", "G006"});
  const auto b = gen_continuous(cfg, store, {"G009", "G005"});
  // G005's kept frames are the same wherever it appears.
  const std::size_t p5 = static_cast<std::size_t>(store.at("G005").size());
  const std::size_t offset = static_cast<std::size_t>(store.at("G009").size() + cfg.n_li);
  for (std::size_t p = 0; p + 1 < p5; ++p) EXPECT_EQ(a.gt_mask[p], b.gt_mask[offset + p]);
}

TEST(Continuous, DropRateNearConfigured) {
  SyntheticConfig cfg;
  cfg.trim_max = 0;
  cfg.vocab_size = 200;
  std::size_t kept = 0, total = 0;
  for (int g = 0; g < cfg.vocab_size; ++g)
    for (int p = 1; p <= 20; ++p, ++total) kept += sign_frame_dropped(cfg, gloss_name(g), p, 20) ? 0 : 1;
  EXPECT_NEAR(static_cast<double>(kept) / static_cast<double>(total), 1.0 - cfg.drop_prob, 0.03);
}

TEST(Segments, DrawnFromVocabularyWithinLengthRange) {
  SyntheticConfig cfg;
  const auto vocab = dictionary_glosses(cfg);
  for (std::uint64_t i = 0; i < 200; ++i) {
    const auto g = gen_gloss_sequence(cfg, vocab, i);
    EXPECT_GE(static_cast<int>(g.size()), cfg.segment_min_glosses);
    EXPECT_LE(static_cast<int>(g.size()), cfg.segment_max_glosses);
    for (const auto& x : g) EXPECT_NE(std::find(vocab.begin(), vocab.end(), x), vocab.end());
  }
  EXPECT_EQ(gen_gloss_sequence(cfg, vocab, 5), gen_gloss_sequence(cfg, vocab, 5));
}

TEST(Text, PlainConfigCopiesGloss) {
  SyntheticConfig cfg;
  cfg.mover_fraction = 0.0;
  cfg.filler_rate = 0.0;
  for (const auto& p : gen_parallel_text(cfg, 100)) EXPECT_EQ(p.spoken, p.gloss);
}

TEST(Text, FillersOnlyOnSpokenSide) {
  SyntheticConfig cfg;
  std::set<std::string> fillers;
  for (int i = 0; i < cfg.filler_vocab_size; ++i) fillers.insert(filler_name(i));
  std::size_t seen = 0;
  for (const auto& p : gen_parallel_text(cfg, 500)) {
    for (const auto& w : p.gloss) EXPECT_FALSE(fillers.count(w));
    for (const auto& w : p.spoken) seen += fillers.count(w);
    EXPECT_GE(static_cast<int>(p.gloss.size()), cfg.text_min_len);
    EXPECT_LE(static_cast<int>(p.gloss.size()), cfg.text_max_len);
  }
  EXPECT_GT(seen, 0u);
}

TEST(Text, LengthRatioFollowsFillerRate) {
  SyntheticConfig cfg;
  double ratio = 0.0;
  const auto pairs = gen_parallel_text(cfg, 10000);
  for (const auto& p : pairs) ratio += static_cast<double>(p.spoken.size()) / static_cast<double>(p.gloss.size());
  ratio /= static_cast<double>(pairs.size());
  EXPECT_NEAR(ratio, 1.0 + cfg.filler_rate, 0.05 * (1.0 + cfg.filler_rate));
}

TEST(Text, MappingIsInvertible) {
  SyntheticConfig cfg;
  const auto movers = mover_glosses(cfg);
  EXPECT_EQ(movers.size(), 10u);
  std::size_t swapped = 0;
  for (const auto& p : gen_parallel_text(cfg, 2000)) {
    ASSERT_EQ(recover_gloss(cfg, p.spoken), p.gloss);
    swapped += recover_gloss(cfg, p.spoken) != p.spoken ? 1 : 0;
  }
  EXPECT_GT(swapped, 0u);
}

TEST(Text, IndexedGenerationIsStable) {
  SyntheticConfig cfg;
  const auto all = gen_parallel_text(cfg, 30);
  const auto tail = gen_parallel_text(cfg, 10, 20);
  for (std::size_t i = 0; i < 10; ++i) {
    EXPECT_EQ(tail[i].spoken, all[20 + i].spoken);
    EXPECT_EQ(tail[i].gloss, all[20 + i].gloss);
  }
}

TEST(Config, Validation) {
  SyntheticConfig cfg;
  cfg.drop_prob = 1.5;
  EXPECT_THROW(cfg.validate(), ShapeError);
  cfg = {};
  cfg.sign_min_frames = 30;
  EXPECT_THROW(cfg.validate(), ShapeError);
  cfg = {};
  cfg.mover_fraction = 1.0;
  EXPECT_THROW(cfg.validate(), ShapeError);
}
