#include <gtest/gtest.h>

#include "slp/pose.hpp"
#include "support.hpp"

using namespace slp;

namespace {

PoseFrame frame_of(std::initializer_list<double> v, int joints, int dims) {
  PoseFrame f(joints, dims);
  std::copy(v.begin(), v.end(), f.data());
  return f;
}

PoseSequence scalar_sequence(const std::vector<double>& xs) {
  PoseSequence s(SkeletonSpec::chain(1, 2), 25.0, static_cast<Index>(xs.size()));
  for (std::size_t i = 0; i < xs.size(); ++i) s.data.row(static_cast<Index>(i)) << xs[i], 0.0;
  return s;
}

std::vector<PoseSequence> random_stack(Rng& rng, int signs, int min_len, int max_len) {
  std::vector<PoseSequence> stack;
  for (int w = 0; w < signs; ++w)
    stack.push_back(test::random_sequence(rng, SkeletonSpec::upper_body(), rng.integer(min_len, max_len)));
  return stack;
}

}  // namespace

TEST(Skeleton, ValidatesLimbs) {
  EXPECT_NO_THROW(SkeletonSpec::upper_body().validate(true));
  EXPECT_THROW((SkeletonSpec{2, 2, {{0, 2}}}.validate()), ShapeError);
  EXPECT_THROW((SkeletonSpec{2, 2, {{1, 1}}}.validate()), ShapeError);
  EXPECT_THROW((SkeletonSpec{2, 4, {}}.validate()), ShapeError);
  EXPECT_NO_THROW((SkeletonSpec{2, 2, {}}.validate()));
  EXPECT_THROW((SkeletonSpec{2, 2, {}}.validate(true)), ShapeError);
}

TEST(Normalize, AlreadyNormalizedIsUnchanged) {
  Rng rng(1);
  const auto seq = test::random_sequence(rng, SkeletonSpec::upper_body(), 8);
  const auto once = normalize_sequence(seq, 0, {3, 6});
  const auto twice = normalize_sequence(once, 0, {3, 6});
  EXPECT_LE((once.data - twice.data).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Normalize, RootAtOriginAndUnitShoulders) {
  Rng rng(2);
  const auto n = normalize_sequence(test::random_sequence(rng, SkeletonSpec::upper_body(), 5), 0, {3, 6});
  for (Index i = 0; i < n.size(); ++i) EXPECT_EQ(n.frame(i).row(0).norm(), 0.0);
  const PoseFrame f = n.frame(0);
  EXPECT_NEAR((f.row(3) - f.row(6)).norm(), 1.0, 1e-12);
}

TEST(Normalize, TranslationAndScaleInvariant) {
  Rng rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const auto seq = test::random_sequence(rng, SkeletonSpec::upper_body(), 6);
    auto moved = seq;
    moved.data.array() += 5.0;
    auto scaled = seq;
    scaled.data *= 2.0;
    const auto base = normalize_sequence(seq, 0, {3, 6});
    EXPECT_LE((normalize_sequence(moved, 0, {3, 6}).data - base.data).cwiseAbs().maxCoeff(), 1e-9);
    EXPECT_LE((normalize_sequence(scaled, 0, {3, 6}).data - base.data).cwiseAbs().maxCoeff(), 1e-9);
  }
}

TEST(Normalize, ZeroScaleIsDegenerate) {
  PoseSequence s(SkeletonSpec::chain(3, 2), 25.0, 2);
  EXPECT_THROW(normalize_sequence(s, 0, {1, 2}), DegenerateInputError);
}

TEST(Trim, ZeroThresholdKeepsMovingSequence) {
  Rng rng(4);
  const auto seq = test::random_sequence(rng, SkeletonSpec::upper_body(), 12);
  const auto r = trim_onset_offset(seq, 0.0);
  EXPECT_FALSE(r.is_static);
  EXPECT_EQ(r.seq, seq);
}

TEST(Trim, StaticMovingStaticKeepsSpanPlusBoundaries) {
  std::vector<double> xs;
  for (int i = 0; i < 10; ++i) xs.push_back(0.0);
  for (int i = 1; i <= 20; ++i) xs.push_back(0.1 * i);
  for (int i = 0; i < 10; ++i) xs.push_back(2.0);
  const auto seq = scalar_sequence(xs);
  const auto r = trim_onset_offset(seq, 0.05);
  EXPECT_FALSE(r.is_static);
  // Energies 9..28 are active (frame i -> i+1), so frames 8..29 survive.
  ASSERT_EQ(r.seq.size(), 22);
  EXPECT_EQ(r.seq, seq.slice(8, 30));
}

TEST(Trim, IdenticalFramesAreStatic) {
  const auto seq = scalar_sequence({1, 1, 1, 1});
  const auto r = trim_onset_offset(seq);
  EXPECT_TRUE(r.is_static);
  EXPECT_EQ(r.seq, seq);
}

TEST(Trim, ContiguousAndIdempotent) {
  Rng rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> xs;
    double x = 0.0;
    const int n = static_cast<int>(rng.integer(2, 30));
    for (int i = 0; i < n; ++i) {
      if (rng.bernoulli(0.5)) x += rng.uniform(0.0, 0.2);
      xs.push_back(x);
    }
    const auto seq = scalar_sequence(xs);
    const auto once = trim_onset_offset(seq, 0.05);
    // Contiguous slice: find the offset where the result matches.
    bool found = false;
    for (Index b = 0; b + once.seq.size() <= seq.size() && !found; ++b)
      found = seq.slice(b, b + once.seq.size()) == once.seq;
    EXPECT_TRUE(found);
    if (once.seq.size() >= 2) {
      EXPECT_EQ(trim_onset_offset(once.seq, 0.05).seq, once.seq);
    }
  }
}

TEST(Trim, NeedsTwoFrames) { EXPECT_THROW(trim_onset_offset(scalar_sequence({1})), ShapeError); }

TEST(Interpolate, Midpoint) {
  const auto out = linear_interpolate(frame_of({0, 0}, 1, 2), frame_of({1, 1}, 1, 2), 1);
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out[0](0, 0), 0.5);
  EXPECT_EQ(out[0](0, 1), 0.5);
}

TEST(Interpolate, EqualSpacingFiveFrames) {
  const auto out = linear_interpolate(frame_of({0}, 1, 1), frame_of({6}, 1, 1), 5);
  ASSERT_EQ(out.size(), 5u);
  for (int i = 0; i < 5; ++i) EXPECT_DOUBLE_EQ(out[static_cast<std::size_t>(i)](0, 0), i + 1.0);
}

TEST(Interpolate, ZeroFramesAndShapeMismatch) {
  EXPECT_TRUE(linear_interpolate(frame_of({0, 0}, 1, 2), frame_of({1, 1}, 1, 2), 0).empty());
  EXPECT_THROW(linear_interpolate(frame_of({0, 0}, 1, 2), frame_of({1, 1}, 2, 1), 1), ShapeError);
}

TEST(Interpolate, StaysOnSegment) {
  Rng rng(6);
  for (int trial = 0; trial < 200; ++trial) {
    const PoseFrame a = test::random_matrix(rng, 10, 2), b = test::random_matrix(rng, 10, 2);
    for (const auto& f : linear_interpolate(a, b, static_cast<int>(rng.integer(0, 8))))
      for (Index i = 0; i < f.size(); ++i) {
        EXPECT_GE(f.data()[i], std::min(a.data()[i], b.data()[i]) - 1e-15);
        EXPECT_LE(f.data()[i], std::max(a.data()[i], b.data()[i]) + 1e-15);
      }
  }
}

TEST(Dictionary, StackPreservesOrderAndRepeats) {
  DictionaryStore store;
  Rng rng(7);
  const auto g1 = test::random_sequence(rng, SkeletonSpec::upper_body(), 3);
  const auto g2 = test::random_sequence(rng, SkeletonSpec::upper_body(), 4);
  store.add("G1", g1);
  store.add("G2", g2);
  EXPECT_TRUE(stack_dictionary({}, store).empty());
  const auto stack = stack_dictionary({"G1", "G2", "G1"}, store);
  ASSERT_EQ(stack.size(), 3u);
  EXPECT_EQ(stack[0], g1);
  EXPECT_EQ(stack[1], g2);
  EXPECT_EQ(stack[2], g1);
}

TEST(Dictionary, UnknownGlossNamesTheGloss) {
  DictionaryStore store;
  Rng rng(8);
  store.add("HAUS", test::random_sequence(rng, SkeletonSpec::upper_body(), 3));
  try {
    stack_dictionary({"HAUS", "BAUM"}, store);
    FAIL() << "expected a lookup error";
  } catch (const LookupError& e) {
    EXPECT_EQ(e.key(), "BAUM");
  }
}

TEST(Dictionary, RejectsEmptyAndMismatchedEntries) {
  DictionaryStore store;
  EXPECT_THROW(store.add("E", PoseSequence(SkeletonSpec::upper_body(), 25.0, 0)), ShapeError);
  store.add("A", PoseSequence(SkeletonSpec::upper_body(), 25.0, 2));
  EXPECT_THROW(store.add("B", PoseSequence(SkeletonSpec::chain(3, 2), 25.0, 2)), ShapeError);
}

TEST(Interpolated, SingleSignIsUnchanged) {
  Rng rng(9);
  const auto s = test::random_sequence(rng, SkeletonSpec::upper_body(), 6);
  const auto i = build_interpolated_sequence({s}, 5);
  EXPECT_EQ(i.seq, s);
  for (const auto& pv : i.provenance) EXPECT_TRUE(pv.is_sign());
}

TEST(Interpolated, TwoThreeFrameSignsGiveElevenFrames) {
  Rng rng(10);
  const auto a = test::random_sequence(rng, SkeletonSpec::upper_body(), 3);
  const auto b = test::random_sequence(rng, SkeletonSpec::upper_body(), 3);
  const auto i = build_interpolated_sequence({a, b}, 5);
  ASSERT_EQ(i.size(), 11);
  std::vector<Provenance> expected;
  for (int p = 1; p <= 3; ++p) expected.push_back(Provenance::sign(0, p, 3));
  for (int j = 1; j <= 5; ++j) expected.push_back(Provenance::interp(0, j, 5));
  for (int p = 1; p <= 3; ++p) expected.push_back(Provenance::sign(1, p, 3));
  EXPECT_EQ(i.provenance, expected);
  // Block frames follow linear_interpolate between the bridging frames.
  const auto bridge = linear_interpolate(a.frame(2), b.frame(0), 5);
  for (int j = 0; j < 5; ++j) EXPECT_EQ(i.seq.frame(3 + j), bridge[static_cast<std::size_t>(j)]);
}

TEST(Interpolated, ZeroInterpolationConcatenates) {
  Rng rng(11);
  const auto a = test::random_sequence(rng, SkeletonSpec::upper_body(), 2);
  const auto b = test::random_sequence(rng, SkeletonSpec::upper_body(), 4);
  const auto i = build_interpolated_sequence({a, b}, 0);
  ASSERT_EQ(i.size(), 6);
  EXPECT_EQ(i.seq.slice(0, 2), a);
  EXPECT_EQ(i.seq.slice(2, 6), b);
}

TEST(Interpolated, RejectsEmptyAndMismatchedStacks) {
  EXPECT_THROW(build_interpolated_sequence({}, 5), ShapeError);
  PoseSequence a(SkeletonSpec::upper_body(), 25.0, 2), b(SkeletonSpec::chain(3, 2), 25.0, 2);
  EXPECT_THROW(build_interpolated_sequence({a, b}, 5), ShapeError);
}

TEST(InterpolatedProperty, LengthMatchesClosedForm) {
  Rng rng(12);
  for (int trial = 0; trial < 1000; ++trial) {
    const int n_li = static_cast<int>(rng.integer(0, 6));
    const auto stack = random_stack(rng, static_cast<int>(rng.integer(1, 6)), 1, 7);
    std::vector<Index> lengths;
    for (const auto& s : stack) lengths.push_back(s.size());
    const auto i = build_interpolated_sequence(stack, n_li);
    ASSERT_EQ(i.size(), interpolated_length(lengths, n_li));
    ASSERT_NO_THROW(i.validate());
  }
}
