#include <gtest/gtest.h>

#include "slp/align.hpp"
#include "support.hpp"

using namespace slp;

namespace {

AlignmentPath2D path_of(std::vector<std::pair<Index, Index>> pairs) {
  AlignmentPath2D p;
  p.pairs = std::move(pairs);
  return p;
}

}  // namespace

TEST(FrameDistance, Basics) {
  Matrix a(1, 2), b(1, 2);
  a << 0, 0;
  b << 3, 4;
  EXPECT_EQ(frame_distance(a, a), 0.0);
  EXPECT_EQ(frame_distance(a, b), 5.0);
  EXPECT_THROW(frame_distance(a, Matrix(2, 1)), ShapeError);
}

TEST(Dtw, SingleCell) {
  Matrix c(1, 1);
  c << 2.5;
  const auto p = dtw(c);
  EXPECT_EQ(p.pairs, (std::vector<std::pair<Index, Index>>{{0, 0}}));
  EXPECT_EQ(p.total_cost, 2.5);
}

TEST(Dtw, IdenticalSequencesGiveDiagonal) {
  Rng rng(31);
  const auto s = test::random_sequence(rng, SkeletonSpec::upper_body(), 3);
  const auto p = dtw(pairwise_costs(s, s));
  EXPECT_EQ(p.pairs, (std::vector<std::pair<Index, Index>>{{0, 0}, {1, 1}, {2, 2}}));
  EXPECT_EQ(p.total_cost, 0.0);
}

TEST(Dtw, RejectsEmptyAndNonFinite) {
  EXPECT_THROW(dtw(Matrix(0, 3)), ShapeError);
  Matrix c = Matrix::Zero(2, 2);
  c(1, 0) = std::numeric_limits<double>::quiet_NaN();
  EXPECT_THROW(dtw(c), DegenerateInputError);
}

TEST(Dtw, MatchesExhaustiveEnumeration) {
  Rng rng(32);
  for (int trial = 0; trial < 300; ++trial) {
    const Matrix c = test::random_matrix(rng, rng.integer(1, 6), rng.integer(1, 6), 0.0, 1.0);
    const auto p = dtw(c);
    ASSERT_EQ(p.total_cost, test::brute_force_dtw(c));
    ASSERT_TRUE(p.is_valid_for(c));
  }
}

TEST(Dtw, PathIsMonotoneWithUnitSteps) {
  Rng rng(33);
  for (int trial = 0; trial < 300; ++trial) {
    const Matrix c = test::random_matrix(rng, rng.integer(1, 12), rng.integer(1, 12), 0.0, 1.0);
    const auto p = dtw(c);
    ASSERT_EQ(p.pairs.front(), (std::pair<Index, Index>{0, 0}));
    ASSERT_EQ(p.pairs.back(), (std::pair<Index, Index>{c.rows() - 1, c.cols() - 1}));
    for (std::size_t i = 1; i < p.pairs.size(); ++i) {
      const Index dq = p.pairs[i].first - p.pairs[i - 1].first, dt = p.pairs[i].second - p.pairs[i - 1].second;
      ASSERT_TRUE((dq == 1 || dq == 0) && (dt == 1 || dt == 0) && dq + dt > 0);
    }
  }
}

TEST(Dtw, DeterministicOnTies) {
  const Matrix c = Matrix::Zero(4, 4);
  ASSERT_GT(test::optimal_path_count(c), 1u);
  const auto p = dtw(c);
  EXPECT_EQ(p.pairs, dtw(c).pairs);
  // Diagonal preference on a flat matrix.
  EXPECT_EQ(p.pairs.size(), 4u);
}

TEST(Dtw, FloatScalar) {
  Eigen::MatrixXf c(2, 2);
  c << 1, 2, 3, 1;
  EXPECT_EQ(dtw(c).total_cost, 2.0);
}

TEST(Collapse, DiagonalIsAllOnes) {
  const Matrix c = Matrix::Zero(3, 3);
  EXPECT_EQ(collapse_path(dtw(c), c), SelectionMask(3, true));
}

TEST(Collapse, PicksCheapestPerOutputFrame) {
  Matrix c(4, 2);
  c << 0.1, 9,  //
      0.5, 9,   //
      9, 0.4,   //
      9, 0.2;
  const auto m = collapse_path(path_of({{0, 0}, {1, 0}, {2, 1}, {3, 1}}), c);
  EXPECT_EQ(m, SelectionMask::from_bits({1, 0, 0, 1}));
}

TEST(Collapse, OneInputManyOutputs) {
  const Matrix c = Matrix::Ones(2, 3);
  const auto m = collapse_path(path_of({{0, 0}, {0, 1}, {1, 2}}), c);
  EXPECT_EQ(m, SelectionMask::from_bits({1, 1}));
  EXPECT_LT(m.selected_count(), 3u);
}

TEST(Collapse, TiesTakeSmallestQ) {
  const Matrix c = Matrix::Ones(3, 1);
  const auto m = collapse_path(path_of({{0, 0}, {1, 0}, {2, 0}}), c);
  EXPECT_EQ(m, SelectionMask::from_bits({1, 0, 0}));
}

TEST(Collapse, PropertiesOnRandomPaths) {
  Rng rng(34);
  for (int trial = 0; trial < 500; ++trial) {
    const Index Q = rng.integer(1, 10), T = rng.integer(1, 10);
    const Matrix c = test::random_matrix(rng, Q, T, 0.0, 1.0);
    const auto m = collapse_path(dtw(c), c);
    ASSERT_EQ(m.size(), static_cast<std::size_t>(Q));
    ASSERT_GE(m.selected_count(), 1u);
    ASSERT_LE(m.selected_count(), static_cast<std::size_t>(std::min(Q, T)));
  }
}

TEST(ApplySelection, IdentityAndSubset) {
  Rng rng(35);
  const auto s = test::random_sequence(rng, SkeletonSpec::upper_body(), 4);
  EXPECT_EQ(apply_selection(s, SelectionMask(4, true)), s);
  const auto picked = apply_selection(s, SelectionMask::from_bits({1, 0, 1, 0}));
  ASSERT_EQ(picked.size(), 2);
  EXPECT_EQ(picked.frame(0), s.frame(0));
  EXPECT_EQ(picked.frame(1), s.frame(2));
  EXPECT_THROW(apply_selection(s, SelectionMask(3, true)), ShapeError);
}

TEST(ApplySelection, EqualsOneHotProduct) {
  Rng rng(36);
  for (int trial = 0; trial < 200; ++trial) {
    const Index Q = rng.integer(1, 20);
    const auto s = test::random_sequence(rng, SkeletonSpec::upper_body(), Q);
    const auto m = test::random_mask(rng, static_cast<std::size_t>(Q));
    const Matrix product = m.selection_matrix() * s.data;
    ASSERT_EQ(apply_selection(s, m).data, product);
  }
}

TEST(Metrics, HandCounts) {
  const auto same = alignment_metrics(SelectionMask::from_bits({1, 0, 1}), SelectionMask::from_bits({1, 0, 1}));
  EXPECT_EQ(same.precision, 1.0);
  EXPECT_EQ(same.recall, 1.0);
  EXPECT_EQ(same.f1, 1.0);
  EXPECT_EQ(same.frame_accuracy, 1.0);

  const auto comp = alignment_metrics(SelectionMask::from_bits({1, 0, 0}), SelectionMask::from_bits({0, 1, 1}));
  EXPECT_EQ(comp.precision, 0.0);
  EXPECT_EQ(comp.recall, 0.0);

  const auto m = alignment_metrics(SelectionMask::from_bits({1, 1, 0, 0}), SelectionMask::from_bits({1, 0, 1, 0}));
  EXPECT_DOUBLE_EQ(m.precision, 0.5);
  EXPECT_DOUBLE_EQ(m.recall, 0.5);
  EXPECT_DOUBLE_EQ(m.f1, 0.5);
  EXPECT_DOUBLE_EQ(m.frame_accuracy, 0.5);
}

TEST(Mask, TextRoundTrip) {
  Rng rng(37);
  const auto m = test::random_mask(rng, 17);
  EXPECT_EQ(parse_mask(format_mask(m)), m);
  EXPECT_THROW(parse_mask("1 0 2"), ParseError);
}

TEST(DtwDistance, ZeroForSelfAndDecimatedCopies) {
  Rng rng(38);
  const auto s = test::random_sequence(rng, SkeletonSpec::upper_body(), 8);
  EXPECT_EQ(dtw_distance(s, s), 0.0);
  auto shifted = s;
  shifted.data.array() += 1.0;
  EXPECT_GT(dtw_distance(s, shifted), 0.0);
}

TEST(Collapse, MarkedIndicesLieOnPath) {
  Rng rng(39);
  for (int trial = 0; trial < 300; ++trial) {
    const Matrix c = test::random_matrix(rng, rng.integer(1, 8), rng.integer(1, 8), 0.0, 1.0);
    const auto p = dtw(c);
    const auto m = collapse_path(p, c);
    for (Index q : m.indices()) {
      const bool on_path =
          std::any_of(p.pairs.begin(), p.pairs.end(), [q](const auto& pr) { return pr.first == q; });
      ASSERT_TRUE(on_path);
    }
  }
}

TEST(Dtw, TransposeGivesTransposedPathWhenOptimumIsUnique) {
  Rng rng(40);
  int checked = 0;
  for (int trial = 0; trial < 400; ++trial) {
    const Matrix c = test::random_matrix(rng, rng.integer(1, 6), rng.integer(1, 6), 0.0, 1.0);
    if (test::optimal_path_count(c) != 1) continue;
    ++checked;
    const auto p = dtw(c);
    const Matrix ct = c.transpose();
    const auto pt = dtw(ct);
    ASSERT_EQ(p.pairs.size(), pt.pairs.size());
    for (std::size_t i = 0; i < p.pairs.size(); ++i) {
      ASSERT_EQ(p.pairs[i].first, pt.pairs[i].second);
      ASSERT_EQ(p.pairs[i].second, pt.pairs[i].first);
    }
  }
  EXPECT_GT(checked, 100);
}

TEST(ApplySelection, CommutesWithFramewiseAffineMaps) {
  Rng rng(41);
  for (int trial = 0; trial < 100; ++trial) {
    const auto s = test::random_sequence(rng, SkeletonSpec::upper_body(), rng.integer(1, 12));
    const auto m = test::random_mask(rng, static_cast<std::size_t>(s.size()));
    const Matrix A = test::random_matrix(rng, 2, 2);
    const Matrix b = test::random_matrix(rng, 1, 2);
    auto affine = [&](PoseSequence x) {
      for (Index i = 0; i < x.size(); ++i) {
        Matrix f = x.frame(i) * A;
        f.rowwise() += b.row(0);
        x.set_frame(i, f);
      }
      return x;
    };
    ASSERT_EQ(apply_selection(affine(s), m), affine(apply_selection(s, m)));
  }
}
