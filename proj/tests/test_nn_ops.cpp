#include <gtest/gtest.h>

#include <cmath>

#include "gradcases.hpp"
#include "slp/nn/ops.hpp"

using namespace slp;
using namespace slp::nn;

namespace {

Tensor t(std::initializer_list<std::initializer_list<double>> rows) {
  Matrix m(static_cast<Index>(rows.size()), static_cast<Index>(rows.begin()->size()));
  Index r = 0;
  for (const auto& row : rows) {
    Index c = 0;
    for (double v : row) m(r, c++) = v;
    ++r;
  }
  return Tensor(m);
}

}  // namespace

TEST(GradCheck, EveryOperationAndLayer) {
  for (const auto& c : test::grad_cases()) {
    SCOPED_TRACE(c.name);
    EXPECT_LT(c.run(), 1e-4) << c.name;
  }
}

TEST(GradCheck, SumHasUnitGradient) {
  Rng rng(41);
  EXPECT_LT(grad_check([](const Tensor& x) { return sum(x); }, Tensor(test::random_matrix(rng, 3, 3))), 1e-10);
}

TEST(GradCheck, SoftmaxCrossEntropyMatchesClosedForm) {
  Rng rng(42);
  Tensor logits(test::random_matrix(rng, 3, 4), true);
  const std::vector<int> targets{0, 3, 1};
  cross_entropy(logits, targets).backward();
  const Matrix p = softmax(Tensor(logits.value()), 1).value();
  Matrix expected = p;
  for (Index i = 0; i < 3; ++i) expected(i, targets[static_cast<std::size_t>(i)]) -= 1.0;
  expected /= 3.0;
  EXPECT_LT((logits.grad() - expected).cwiseAbs().maxCoeff(), 1e-6);
  EXPECT_LT(grad_check([&](const Tensor& x) { return cross_entropy(x, targets); }, logits), 1e-6);
}

TEST(GradCheck, DetectsWrongGradient) {
  // An op whose backward is deliberately off by a factor of two.
  auto bad = [](const Tensor& x) {
    Tensor y = make_op(x.value().array().square().matrix(), {x}, [x](Node& n) mutable {
      x.node()->accumulate((n.grad.array() * x.value().array()).matrix());
    });
    return sum(y);
  };
  Rng rng(43);
  EXPECT_GT(grad_check(bad, Tensor(test::random_matrix(rng, 2, 2))), 0.1);
}

TEST(Linear, HandValues) {
  const auto y = linear(t({{1, 2}}), Tensor(Matrix::Identity(2, 2)), t({{3, 3}}));
  EXPECT_EQ(y.value(), t({{4, 5}}).value());
  const Matrix x = t({{1, -2}, {0.5, 7}}).value();
  EXPECT_EQ(linear(Tensor(x), Tensor(Matrix::Identity(2, 2)), Tensor(Matrix::Zero(1, 2))).value(), x);
  EXPECT_THROW(linear(t({{1, 2, 3}}), Tensor(Matrix::Identity(2, 2)), t({{0, 0}})), ShapeError);
}

TEST(Softmax, UniformAndMasked) {
  const auto p = softmax(t({{2, 2, 2, 2}}));
  for (Index i = 0; i < 4; ++i) EXPECT_DOUBLE_EQ(p.value()(0, i), 0.25);
  Mask m(1, 4);
  m << false, true, false, false;
  const auto q = softmax(t({{5, -3, 9, 1}}), 1, &m);
  EXPECT_EQ(q.value(), t({{0, 1, 0, 0}}).value());
  Mask none = Mask::Constant(1, 4, false);
  EXPECT_THROW(softmax(t({{1, 2, 3, 4}}), 1, &none), ShapeError);
}

TEST(Softmax, RowsSumToOne) {
  Rng rng(44);
  for (int trial = 0; trial < 100; ++trial) {
    const auto p = softmax(Tensor(test::random_matrix(rng, 4, 6, -50.0, 50.0)));
    for (Index r = 0; r < 4; ++r) EXPECT_NEAR(p.value().row(r).sum(), 1.0, 1e-12);
  }
}

TEST(CrossEntropy, ClosedForms) {
  EXPECT_NEAR(cross_entropy(t({{0, 0, 0, 0}}), {2}).item(), std::log(4.0), 1e-12);
  double prev = 1e9;
  for (double margin : {1.0, 5.0, 20.0, 50.0}) {
    const double l = cross_entropy(t({{margin, 0, 0}}), {0}).item();
    EXPECT_LT(l, prev);
    prev = l;
  }
  EXPECT_LT(prev, 1e-20);
  try {
    cross_entropy(t({{1, 2}, {3, 4}}), {0, 0}, 0);
    FAIL();
  } catch (const ShapeError& e) {
    EXPECT_NE(std::string(e.what()).find("no supervised positions"), std::string::npos);
  }
}

TEST(BinaryCrossEntropy, ClosedForms) {
  EXPECT_NEAR(binary_cross_entropy(t({{0.5, 0.5, 0.5}}), {1, 0, 1}).item(), std::log(2.0), 1e-12);
  EXPECT_LE(binary_cross_entropy(t({{1, 0, 1}}), {1, 0, 1}).item(), -std::log(1 - kProbEpsilon) + 1e-15);
  const double worst = binary_cross_entropy(t({{1, 1}}), {0, 0}).item();
  EXPECT_GT(worst, 10.0);
  EXPECT_LE(worst, -std::log(kProbEpsilon) + 1e-9);
}

TEST(Gelu, KnownValues) {
  const auto y = gelu(t({{0, 1, -1}}));
  EXPECT_EQ(y.value()(0, 0), 0.0);
  EXPECT_NEAR(y.value()(0, 1), 0.8411919906082768, 1e-12);
  EXPECT_NEAR(y.value()(0, 2), -0.15880800939172324, 1e-12);
}

TEST(LayerNorm, ZeroMeanUnitVariance) {
  Rng rng(45);
  const auto y = layer_norm(Tensor(test::random_matrix(rng, 3, 8)), Tensor(Matrix::Ones(1, 8)), Tensor(Matrix::Zero(1, 8)));
  for (Index r = 0; r < 3; ++r) {
    EXPECT_NEAR(y.value().row(r).mean(), 0.0, 1e-12);
    EXPECT_NEAR(y.value().row(r).squaredNorm() / 8.0, 1.0, 1e-3);
  }
}

TEST(Dropout, IdentityAtZeroAndScaledOtherwise) {
  Rng rng(46);
  const Tensor x(test::random_matrix(rng, 10, 10));
  EXPECT_EQ(dropout(x, 0.0, &rng).value(), x.value());
  EXPECT_EQ(dropout(x, 0.5, nullptr).value(), x.value());
  const auto y = dropout(x, 0.5, &rng);
  for (Index i = 0; i < x.numel(); ++i) {
    const double v = y.value().data()[i];
    EXPECT_TRUE(v == 0.0 || v == 2.0 * x.value().data()[i]);
  }
}

TEST(Embedding, GathersAndScatters) {
  Tensor table(t({{1, 2}, {3, 4}, {5, 6}}).value(), true);
  const auto e = embedding(table, {2, 0, 2});
  EXPECT_EQ(e.value(), t({{5, 6}, {1, 2}, {5, 6}}).value());
  sum(e).backward();
  EXPECT_EQ(table.grad(), t({{1, 1}, {0, 0}, {2, 2}}).value());
  EXPECT_THROW(embedding(table, {3}), LookupError);
}

TEST(Sinusoidal, FirstRowAndRange) {
  const Matrix pe = sinusoidal_encoding(5, 6);
  for (Index c = 0; c < 6; ++c) EXPECT_EQ(pe(0, c), c % 2 == 0 ? 0.0 : 1.0);
  EXPECT_LE(pe.cwiseAbs().maxCoeff(), 1.0);
}

TEST(Autodiff, SharedSubgraphAccumulates) {
  const Tensor x(t({{3}}).value(), true);
  auto y = add(mul(x, x), x);  // x^2 + x
  y.backward();
  EXPECT_EQ(x.grad()(0, 0), 7.0);
}

TEST(Autodiff, NoGradGuardSkipsGraph) {
  const Tensor x(t({{3}}).value(), true);
  NoGradGuard guard;
  EXPECT_FALSE(mul(x, x).requires_grad());
}
