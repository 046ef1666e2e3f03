#pragma once

// Finite-difference checks over every differentiable operation, layer and
// the full frame-selection loss. Shared by the unit tests and the acceptance
// runner so both exercise the same cases.

#include <functional>
#include <string>
#include <vector>

#include "slp/fsnet.hpp"
#include "slp/nn/gradcheck.hpp"
#include "slp/nn/layers.hpp"
#include "slp/nn/ops.hpp"
#include "slp/translate.hpp"
#include "support.hpp"

namespace slp::test {

struct GradCase {
  std::string name;
  std::function<double()> run;  // max relative error
};

inline std::vector<GradCase> grad_cases() {
  using namespace nn;
  std::vector<GradCase> cases;
  auto input = [](std::uint64_t seed, Index r, Index c, double lo = -1.0, double hi = 1.0) {
    Rng rng(seed);
    return Tensor(random_matrix(rng, r, c, lo, hi));
  };
  // Weighted sum turns any tensor into a scalar with a non-uniform upstream gradient.
  auto probe = [](const Tensor& t, std::uint64_t seed) {
    Rng rng(seed);
    return sum(mul(t, Tensor(random_matrix(rng, t.rows(), t.cols()))));
  };
  auto unary = [&](std::string name, std::function<Tensor(const Tensor&)> f, Index r, Index c) {
    cases.push_back({std::move(name), [=] { return grad_check([&](const Tensor& x) { return probe(f(x), 99); }, input(1, r, c)); }});
  };

  const Tensor b34 = input(2, 3, 4), b43 = input(3, 4, 3), row = input(4, 1, 4);
  unary("matmul_left", [=](const Tensor& x) { return matmul(x, b34); }, 2, 3);
  unary("matmul_right", [=](const Tensor& x) { return matmul(b43, x); }, 3, 2);
  unary("matmul_nt", [=](const Tensor& x) { return matmul_nt(x, b43); }, 2, 3);
  unary("matmul_nt_right", [=](const Tensor& x) { return matmul_nt(b43, x); }, 2, 3);
  unary("transpose", [](const Tensor& x) { return transpose(x); }, 2, 3);
  unary("add", [=](const Tensor& x) { return add(x, b34); }, 3, 4);
  unary("sub", [=](const Tensor& x) { return sub(b34, x); }, 3, 4);
  unary("mul", [=](const Tensor& x) { return mul(x, b34); }, 3, 4);
  unary("mul_self", [](const Tensor& x) { return mul(x, x); }, 3, 4);
  unary("scale", [](const Tensor& x) { return scale(x, -2.5); }, 3, 4);
  unary("add_row", [=](const Tensor& x) { return add_row(b34, x); }, 1, 4);
  unary("add_constant", [](const Tensor& x) { return add_constant(x, Matrix::Ones(3, 4)); }, 3, 4);
  unary("linear_input", [=](const Tensor& x) { return linear(x, b34, row); }, 2, 3);
  const Tensor bias2(Matrix::Ones(1, 2));
  unary("linear_weight", [=](const Tensor& x) { return linear(b43, x, bias2); }, 3, 2);
  unary("linear_bias", [=](const Tensor& x) { return linear(b43, b34, x); }, 1, 4);
  cases.push_back({"relu", [=] {
                     // Keep away from the kink at zero.
                     Matrix v = input(5, 3, 4).value();
                     for (Index i = 0; i < v.size(); ++i) v.data()[i] += v.data()[i] >= 0 ? 0.1 : -0.1;
                     return grad_check([&](const Tensor& x) { return probe(relu(x), 99); }, Tensor(v));
                   }});
  unary("gelu", [](const Tensor& x) { return gelu(x); }, 3, 4);
  unary("sigmoid", [](const Tensor& x) { return sigmoid(x); }, 3, 4);
  unary("softmax_rows", [](const Tensor& x) { return softmax(x, 1); }, 3, 4);
  unary("softmax_cols", [](const Tensor& x) { return softmax(x, 0); }, 3, 4);
  cases.push_back({"softmax_masked", [=] {
                     const Mask m = causal_mask(4);
                     return grad_check([&](const Tensor& x) { return probe(softmax(x, 1, &m), 99); }, input(6, 4, 4));
                   }});
  unary("layer_norm_input", [=](const Tensor& x) { return layer_norm(x, row, input(7, 1, 4)); }, 3, 4);
  unary("layer_norm_gain", [=](const Tensor& x) { return layer_norm(b34, x, row); }, 1, 4);
  unary("layer_norm_bias", [=](const Tensor& x) { return layer_norm(b34, row, x); }, 1, 4);
  unary("embedding", [](const Tensor& x) { return embedding(x, {2, 0, 2, 4}); }, 5, 3);
  unary("concat_cols", [=](const Tensor& x) { return concat_cols({b34, x, b34}); }, 3, 2);
  unary("slice_cols", [](const Tensor& x) { return slice_cols(x, 1, 2); }, 3, 4);
  cases.push_back({"sum", [=] { return grad_check([](const Tensor& x) { return sum(x); }, input(8, 3, 4)); }});
  cases.push_back({"mean", [=] { return grad_check([](const Tensor& x) { return mean(x); }, input(9, 3, 4)); }});
  cases.push_back({"dropout", [=] {
                     return grad_check(
                         [=](const Tensor& x) {
                           Rng rng(5);  // same mask on every evaluation
                           return probe(dropout(x, 0.3, &rng), 99);
                         },
                         input(10, 3, 4));
                   }});
  cases.push_back({"cross_entropy", [=] {
                     return grad_check([](const Tensor& x) { return cross_entropy(x, {1, 3, 0, 2}, 0); }, input(11, 4, 5));
                   }});
  cases.push_back({"binary_cross_entropy", [=] {
                     return grad_check([](const Tensor& x) { return binary_cross_entropy(x, {1, 0, 1, 1, 0}); },
                                       input(12, 5, 1, 0.1, 0.9));
                   }});

  const TransformerConfig tiny{1, 2, 8, 2, 0.0};
  const Tensor seq = input(13, 3, 8), mem = input(14, 2, 8);
  cases.push_back({"attention", [=] {
                     ParamStore store(17);
                     const auto layer = AttentionLayer::create(store, "att", 8);
                     const Mask m = key_padding_mask(3, {true, false});
                     return grad_check_params(
                                [&] { return probe(multi_head_attention(layer, seq, mem, mem, &m, 2), 98); }, store)
                         .max_rel_error;
                   }});
  cases.push_back({"attention_input", [=] {
                     ParamStore store(18);
                     const auto layer = AttentionLayer::create(store, "att", 8);
                     return grad_check([&](const Tensor& x) { return probe(multi_head_attention(layer, x, x, x, nullptr, 2), 98); },
                                       seq);
                   }});
  cases.push_back({"feed_forward", [=] {
                     ParamStore store(19);
                     const auto ff = FeedForward::create(store, "ff", 8, 16);
                     return grad_check_params([&] { return probe(ff(seq), 97); }, store).max_rel_error;
                   }});
  cases.push_back({"encoder_stack", [=] {
                     ParamStore store(20);
                     const auto enc = EncoderStack::create(store, "enc", tiny);
                     return grad_check_params([&] { return probe(transformer_encoder(enc, seq), 96); }, store)
                         .max_rel_error;
                   }});
  cases.push_back({"decoder_stack", [=] {
                     ParamStore store(21);
                     const auto dec = DecoderStack::create(store, "dec", tiny);
                     return grad_check_params([&] { return probe(transformer_decoder(dec, seq, mem, true), 95); }, store)
                         .max_rel_error;
                   }});
  cases.push_back({"decoder_memory", [=] {
                     ParamStore store(22);
                     const auto dec = DecoderStack::create(store, "dec", tiny);
                     return grad_check([&](const Tensor& m) { return probe(transformer_decoder(dec, seq, m, false), 95); },
                                       mem);
                   }});

  cases.push_back({"t2g_loss", [] {
                     const auto src = Vocabulary::from_tokens({"a", "b", "c"});
                     const auto tgt = Vocabulary::from_tokens({"X", "Y"});
                     auto model = T2GModel::create(src, tgt, {1, 2, 8, 2, 0.0}, 25);
                     const auto s = src.encode({"a", "c", "b"}), t = tgt.encode({"Y", "X"});
                     return grad_check_params([&] { return teacher_forced_loss(model, s, t); }, model.params)
                         .max_rel_error;
                   }});
  cases.push_back({"fsnet_loss", [] {
                     Rng rng(23);
                     DictionaryStore store;
                     const auto spec = SkeletonSpec::chain(2, 2);
                     store.add("A", random_sequence(rng, spec, 2));
                     store.add("B", random_sequence(rng, spec, 2));
                     const auto iseq = build_interpolated_sequence(stack_dictionary({"A", "B"}, store), 2);  // Q = 6
                     FSNetConfig cfg;
                     cfg.transformer = {1, 2, 8, 2, 0.0};
                     cfg.gloss_embedding_dim = 4;
                     auto model = FSNetModel::create(Vocabulary::from_tokens({"A", "B"}), spec.width(), cfg, 24);
                     const auto ids = gloss_ids(model, {"A", "B"});
                     const auto repr = build_representation(iseq, ids, model.interp_id());
                     const auto target = SelectionMask::from_bits({1, 0, 1, 1, 0, 1});
                     return grad_check_params(
                                [&] { return fsnet_loss(fsnet_forward(model, repr, encode_gloss(model, ids)), target); },
                                model.params)
                         .max_rel_error;
                   }});
  return cases;
}

}  // namespace slp::test
