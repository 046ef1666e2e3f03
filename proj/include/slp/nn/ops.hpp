#pragma once

#include <vector>

#include "slp/nn/tensor.hpp"
#include "slp/random.hpp"

namespace slp::nn {

Tensor matmul(const Tensor& a, const Tensor& b);
/// a * b^T without materialising the transpose.
Tensor matmul_nt(const Tensor& a, const Tensor& b);
Tensor transpose(const Tensor& a);

Tensor add(const Tensor& a, const Tensor& b);
Tensor sub(const Tensor& a, const Tensor& b);
/// Element-wise product.
Tensor mul(const Tensor& a, const Tensor& b);
Tensor scale(const Tensor& a, double s);
/// Adds a 1 x n row to every row of `a`.
Tensor add_row(const Tensor& a, const Tensor& row);
/// Adds a constant (non-differentiable) matrix.
Tensor add_constant(const Tensor& a, const Matrix& c);

/// x * W + b for x [n, in], W [in, out], b [1, out].
Tensor linear(const Tensor& x, const Tensor& weight, const Tensor& bias);

Tensor relu(const Tensor& x);
/// tanh approximation of GELU.
Tensor gelu(const Tensor& x);
Tensor sigmoid(const Tensor& x);

/// Softmax along `axis` (0 = down columns, 1 = along rows). With a mask,
/// excluded entries get exactly zero weight; a row with no admissible entry
/// is an error. Max-subtracted for stability.
Tensor softmax(const Tensor& x, int axis = 1, const Mask* mask = nullptr);

/// Row-wise layer normalisation with gain/bias rows.
Tensor layer_norm(const Tensor& x, const Tensor& gain, const Tensor& bias, double eps = 1e-5);

/// Gathers rows of `table` by index; gradient scatters back.
Tensor embedding(const Tensor& table, const std::vector<int>& ids);

Tensor concat_cols(const std::vector<Tensor>& parts);
Tensor slice_cols(const Tensor& x, Index start, Index count);

Tensor sum(const Tensor& x);
Tensor mean(const Tensor& x);

/// Inverted dropout; identity when rate == 0 or rng == nullptr.
Tensor dropout(const Tensor& x, double rate, Rng* rng);

inline constexpr int kNoIgnore = -1;

/// Mean negative log-likelihood of `targets` under row-wise softmax(logits),
/// skipping positions equal to `ignore_index`.
Tensor cross_entropy(const Tensor& logits, const std::vector<int>& targets, int ignore_index = kNoIgnore);

inline constexpr double kProbEpsilon = 1e-7;

/// -(1/Q) sum [t ln p + (1 - t) ln(1 - p)] with p clamped to [eps, 1 - eps].
/// `probs` is a Q-element row or column.
Tensor binary_cross_entropy(const Tensor& probs, const std::vector<double>& targets,
                            double eps = kProbEpsilon);

/// [len, dim] sinusoidal position table.
Matrix sinusoidal_encoding(Index len, Index dim);

}  // namespace slp::nn
