#include "slp/nn/layers.hpp"

#include <cmath>

namespace slp::nn {

void TransformerConfig::validate() const {
  if (layers < 0) throw ShapeError("negative layer count");
  if (heads <= 0 || hidden <= 0 || ff_mult <= 0) throw ShapeError("transformer sizes must be positive");
  if (hidden % heads != 0)
    throw ShapeError("hidden size " + std::to_string(hidden) + " is not divisible by " + std::to_string(heads) +
                     " heads");
  if (dropout < 0.0 || dropout >= 1.0) throw ShapeError("dropout must lie in [0, 1)");
}

LinearLayer LinearLayer::create(ParamStore& store, const std::string& name, Index in, Index out) {
  return {store.xavier(name + ".weight", in, out), store.vector(name + ".bias", out, 0.0)};
}

LinearLayer LinearLayer::create_unbiased(ParamStore& store, const std::string& name, Index in, Index out) {
  return {store.xavier(name + ".weight", in, out), Tensor()};
}

LayerNorm LayerNorm::create(ParamStore& store, const std::string& name, Index width) {
  return {store.vector(name + ".gain", width, 1.0), store.vector(name + ".bias", width, 0.0)};
}

AttentionLayer AttentionLayer::create(ParamStore& store, const std::string& name, Index hidden) {
  return {LinearLayer::create(store, name + ".query", hidden, hidden),
          LinearLayer::create_unbiased(store, name + ".key", hidden, hidden),
          LinearLayer::create(store, name + ".value", hidden, hidden),
          LinearLayer::create(store, name + ".output", hidden, hidden)};
}

FeedForward FeedForward::create(ParamStore& store, const std::string& name, Index hidden, Index inner) {
  return {LinearLayer::create(store, name + ".in", hidden, inner),
          LinearLayer::create(store, name + ".out", inner, hidden)};
}

Tensor multi_head_attention(const AttentionLayer& layer, const Tensor& query, const Tensor& key,
                            const Tensor& value, const Mask* mask, int heads, std::vector<Matrix>* weights) {
  const Index hidden = layer.query.weight.rows();
  if (query.cols() != hidden || key.cols() != hidden || value.cols() != hidden)
    throw ShapeError("attention inputs must have width " + std::to_string(hidden));
  if (key.rows() != value.rows()) throw ShapeError("attention keys and values differ in length");
  if (heads <= 0 || hidden % heads != 0) throw ShapeError("hidden size not divisible by head count");
  if (mask && (mask->rows() != query.rows() || mask->cols() != key.rows()))
    throw ShapeError("attention mask must be [q_len, k_len]");

  const Tensor q = layer.query(query);
  const Tensor k = layer.key(key);
  const Tensor v = layer.value(value);
  const Index dh = hidden / heads;
  const double scale_factor = 1.0 / std::sqrt(static_cast<double>(dh));

  if (weights) weights->clear();
  std::vector<Tensor> outputs;
  outputs.reserve(static_cast<std::size_t>(heads));
  for (int h = 0; h < heads; ++h) {
    const Tensor qh = slice_cols(q, h * dh, dh);
    const Tensor kh = slice_cols(k, h * dh, dh);
    const Tensor vh = slice_cols(v, h * dh, dh);
    const Tensor w = softmax(scale(matmul_nt(qh, kh), scale_factor), 1, mask);
    if (weights) weights->push_back(w.value());
    outputs.push_back(matmul(w, vh));
  }
  const Tensor merged = heads == 1 ? outputs.front() : concat_cols(outputs);
  return layer.output(merged);
}

EncoderStack EncoderStack::create(ParamStore& store, const std::string& name, const TransformerConfig& cfg) {
  cfg.validate();
  EncoderStack s;
  s.cfg = cfg;
  const Index H = cfg.hidden;
  for (int l = 0; l < cfg.layers; ++l) {
    const std::string p = name + ".layer" + std::to_string(l);
    EncoderLayer layer;
    layer.norm_self = LayerNorm::create(store, p + ".norm_self", H);
    layer.self_attention = AttentionLayer::create(store, p + ".self_attn", H);
    layer.norm_ff = LayerNorm::create(store, p + ".norm_ff", H);
    layer.ff = FeedForward::create(store, p + ".ff", H, H * cfg.ff_mult);
    s.layers.push_back(std::move(layer));
  }
  if (cfg.layers > 0) s.final_norm = LayerNorm::create(store, name + ".final_norm", H);
  return s;
}

DecoderStack DecoderStack::create(ParamStore& store, const std::string& name, const TransformerConfig& cfg) {
  cfg.validate();
  DecoderStack s;
  s.cfg = cfg;
  const Index H = cfg.hidden;
  for (int l = 0; l < cfg.layers; ++l) {
    const std::string p = name + ".layer" + std::to_string(l);
    DecoderLayer layer;
    layer.norm_self = LayerNorm::create(store, p + ".norm_self", H);
    layer.self_attention = AttentionLayer::create(store, p + ".self_attn", H);
    layer.norm_cross = LayerNorm::create(store, p + ".norm_cross", H);
    layer.cross_attention = AttentionLayer::create(store, p + ".cross_attn", H);
    layer.norm_ff = LayerNorm::create(store, p + ".norm_ff", H);
    layer.ff = FeedForward::create(store, p + ".ff", H, H * cfg.ff_mult);
    s.layers.push_back(std::move(layer));
  }
  if (cfg.layers > 0) s.final_norm = LayerNorm::create(store, name + ".final_norm", H);
  return s;
}

Tensor transformer_encoder(const EncoderStack& stack, const Tensor& x, const Mask* src_mask, Rng* dropout_rng) {
  if (x.cols() != stack.cfg.hidden) throw ShapeError("encoder input width does not match hidden size");
  const double p = stack.cfg.dropout;
  Tensor h = x;
  for (const auto& layer : stack.layers) {
    const Tensor n1 = layer.norm_self(h);
    h = add(h, dropout(multi_head_attention(layer.self_attention, n1, n1, n1, src_mask, stack.cfg.heads), p,
                       dropout_rng));
    h = add(h, dropout(layer.ff(layer.norm_ff(h)), p, dropout_rng));
  }
  return stack.layers.empty() ? h : stack.final_norm(h);
}

Tensor transformer_decoder(const DecoderStack& stack, const Tensor& y, const Tensor& memory, bool causal,
                           const Mask* memory_mask, Rng* dropout_rng) {
  if (y.cols() != stack.cfg.hidden || memory.cols() != stack.cfg.hidden)
    throw ShapeError("decoder input width does not match hidden size");
  const double p = stack.cfg.dropout;
  const Mask self_mask = causal ? causal_mask(y.rows()) : Mask();
  const Mask* self_ptr = causal ? &self_mask : nullptr;
  Tensor h = y;
  for (const auto& layer : stack.layers) {
    const Tensor n1 = layer.norm_self(h);
    h = add(h, dropout(multi_head_attention(layer.self_attention, n1, n1, n1, self_ptr, stack.cfg.heads), p,
                       dropout_rng));
    const Tensor n2 = layer.norm_cross(h);
    h = add(h, dropout(multi_head_attention(layer.cross_attention, n2, memory, memory, memory_mask,
                                            stack.cfg.heads),
                       p, dropout_rng));
    h = add(h, dropout(layer.ff(layer.norm_ff(h)), p, dropout_rng));
  }
  return stack.layers.empty() ? h : stack.final_norm(h);
}

Mask causal_mask(Index n) {
  Mask m(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) m(i, j) = j <= i;
  return m;
}

Mask key_padding_mask(Index rows, const std::vector<bool>& keep) {
  Mask m(rows, static_cast<Index>(keep.size()));
  for (Index i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < keep.size(); ++j) m(i, static_cast<Index>(j)) = keep[j];
  return m;
}

}  // namespace slp::nn
