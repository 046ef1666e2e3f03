#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "slp/nn/layers.hpp"
#include "slp/vocab.hpp"

namespace slp {

/// Encoder-decoder transformer mapping spoken tokens to gloss tokens.
struct T2GModel {
  Vocabulary source;
  Vocabulary target;
  nn::TransformerConfig cfg;
  bool positional_encoding = true;

  nn::ParamStore params;
  nn::Tensor source_embedding;  // [|source|, hidden]
  nn::Tensor target_embedding;  // [|target|, hidden]
  nn::EncoderStack encoder;
  nn::DecoderStack decoder;
  nn::LinearLayer projection;   // hidden -> |target|

  /// Defaults: 2 layers, 4 heads, hidden 128.
  static nn::TransformerConfig default_config() { return {2, 4, 128, 4, 0.0}; }
  static T2GModel create(Vocabulary source, Vocabulary target, const nn::TransformerConfig& cfg,
                         std::uint64_t seed);

  T2GModel() = default;
  T2GModel(T2GModel&&) = default;
  T2GModel& operator=(T2GModel&&) = default;
  T2GModel(const T2GModel&) = delete;
  T2GModel& operator=(const T2GModel&) = delete;
};

using SentencePair = std::pair<TokenSequence, TokenSequence>;

/// One memory row per source token. <pad> positions are excluded as keys.
nn::Tensor encode_source(const T2GModel& model, const TokenSequence& src, Rng* dropout_rng = nullptr);

/// Next-token logits [len(decoder_input), |target|] under a causal mask.
nn::Tensor decode_logits(const T2GModel& model, const nn::Tensor& memory, const TokenSequence& src,
                         const TokenSequence& decoder_input, Rng* dropout_rng = nullptr);

/// Mean teacher-forced cross-entropy of `tgt` + <eos> given <bos> + `tgt`.
nn::Tensor teacher_forced_loss(const T2GModel& model, const TokenSequence& src, const TokenSequence& tgt,
                               Rng* dropout_rng = nullptr, int* correct = nullptr);

inline int default_max_len(const TokenSequence& src) { return 2 * static_cast<int>(src.size()) + 5; }

/// Argmax decoding from <bos> until <eos> or `max_len` tokens (0 = default_max_len).
/// The result excludes <bos>/<eos>.
TokenSequence greedy_translate(const T2GModel& model, const TokenSequence& src, int max_len = 0);

struct T2GTrainOptions {
  int epochs = 10;
  int batch_size = 16;
  double lr = 1e-3;
  double clip_norm = 1.0;
  /// Decay the learning rate linearly to zero over the run.
  bool linear_decay = false;
  std::uint64_t seed = 42;
};

struct T2GTrainReport {
  std::vector<double> loss_curve;      // mean training loss per epoch
  std::vector<double> token_accuracy;  // teacher-forced argmax accuracy per epoch
  std::int64_t steps = 0;
};

/// Teacher-forced training with Adam; deterministic for a given seed.
T2GTrainReport train_t2g(T2GModel& model, const std::vector<SentencePair>& pairs, const T2GTrainOptions& opts);

/// Fraction of pairs whose greedy translation equals the reference exactly.
double sequence_accuracy(const T2GModel& model, const std::vector<SentencePair>& pairs);

/// Parallel corpus lines `source tokens<TAB>target tokens`.
std::vector<std::pair<std::vector<std::string>, std::vector<std::string>>> load_parallel_corpus(
    const std::filesystem::path& path);
void save_parallel_corpus(const std::vector<std::pair<std::vector<std::string>, std::vector<std::string>>>& pairs,
                          const std::filesystem::path& path);

/// Checkpoint plus `<path>.meta` (config and vocabularies).
void save_t2g(const T2GModel& model, const std::filesystem::path& path);
T2GModel load_t2g(const std::filesystem::path& path);

}  // namespace slp
