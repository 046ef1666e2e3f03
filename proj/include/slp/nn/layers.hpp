#pragma once

#include <string>
#include <vector>

#include "slp/nn/ops.hpp"
#include "slp/nn/params.hpp"

namespace slp::nn {

struct TransformerConfig {
  int layers = 2;
  int heads = 4;
  int hidden = 128;
  int ff_mult = 4;
  double dropout = 0.0;

  void validate() const;
  int head_dim() const { return hidden / heads; }
};

struct LinearLayer {
  Tensor weight;  // [in, out]
  Tensor bias;    // [1, out], undefined for a bias-free layer

  static LinearLayer create(ParamStore& store, const std::string& name, Index in, Index out);
  static LinearLayer create_unbiased(ParamStore& store, const std::string& name, Index in, Index out);
  Tensor operator()(const Tensor& x) const { return bias.defined() ? linear(x, weight, bias) : matmul(x, weight); }
};

struct LayerNorm {
  Tensor gain;
  Tensor bias;

  static LayerNorm create(ParamStore& store, const std::string& name, Index width);
  Tensor operator()(const Tensor& x) const { return layer_norm(x, gain, bias); }
};

/// The key projection has no bias: softmax is invariant to it, so it would
/// never receive a gradient.
/// The key projection has no bias: softmax is invariant to it, so it would
/// never receive a gradient.
struct AttentionLayer {
  LinearLayer query, key, value, output;

  static AttentionLayer create(ParamStore& store, const std::string& name, Index hidden);
};

/// Scaled dot-product attention per head over projected inputs, heads
/// concatenated and projected. `mask` is [q_len, k_len]; masked keys get zero
/// weight. When `weights` is non-null it receives one [q_len, k_len] matrix per head.
Tensor multi_head_attention(const AttentionLayer& layer, const Tensor& query, const Tensor& key,
                            const Tensor& value, const Mask* mask, int heads,
                            std::vector<Matrix>* weights = nullptr);

struct FeedForward {
  LinearLayer in, out;

  static FeedForward create(ParamStore& store, const std::string& name, Index hidden, Index inner);
  Tensor operator()(const Tensor& x) const { return out(gelu(in(x))); }
};

struct EncoderLayer {
  LayerNorm norm_self, norm_ff;
  AttentionLayer self_attention;
  FeedForward ff;
};

struct DecoderLayer {
  LayerNorm norm_self, norm_cross, norm_ff;
  AttentionLayer self_attention, cross_attention;
  FeedForward ff;
};

/// Pre-norm encoder stack. The final norm exists only when layers > 0, so a
/// zero-layer stack is the identity.
struct EncoderStack {
  TransformerConfig cfg;
  std::vector<EncoderLayer> layers;
  LayerNorm final_norm;

  static EncoderStack create(ParamStore& store, const std::string& name, const TransformerConfig& cfg);
};

/// Pre-norm decoder stack: self-attention, cross-attention to memory, feed-forward.
struct DecoderStack {
  TransformerConfig cfg;
  std::vector<DecoderLayer> layers;
  LayerNorm final_norm;

  static DecoderStack create(ParamStore& store, const std::string& name, const TransformerConfig& cfg);
};

/// `src_mask` is [seq, seq] or null. `dropout_rng` enables dropout (training).
Tensor transformer_encoder(const EncoderStack& stack, const Tensor& x, const Mask* src_mask = nullptr,
                           Rng* dropout_rng = nullptr);

/// With `causal`, position i attends only to target positions <= i.
/// `memory_mask` is [tgt, src] or null.
Tensor transformer_decoder(const DecoderStack& stack, const Tensor& y, const Tensor& memory, bool causal = true,
                           const Mask* memory_mask = nullptr, Rng* dropout_rng = nullptr);

/// Lower-triangular [n, n] mask.
Mask causal_mask(Index n);
/// [rows, keep.size()] mask whose columns are `keep`.
Mask key_padding_mask(Index rows, const std::vector<bool>& keep);

}  // namespace slp::nn
