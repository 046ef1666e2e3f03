#include "slp/translate.hpp"

#include <cmath>
#include <fstream>
#include <numeric>

#include "slp/keyvalue.hpp"
#include "slp/nn/checkpoint.hpp"
#include "slp/nn/optim.hpp"
#include "slp/numtext.hpp"

namespace slp {

using nn::Tensor;

namespace {

Tensor embed_tokens(const Tensor& table, const TokenSequence& ids, int hidden, bool positional) {
  Tensor e = nn::scale(nn::embedding(table, ids), std::sqrt(static_cast<double>(hidden)));
  if (positional) e = nn::add_constant(e, nn::sinusoidal_encoding(static_cast<Index>(ids.size()), hidden));
  return e;
}

bool has_padding(const TokenSequence& src) {
  for (int t : src)
    if (t == Vocabulary::kPad) return true;
  return false;
}

std::vector<bool> non_pad(const TokenSequence& src) {
  std::vector<bool> keep;
  keep.reserve(src.size());
  for (int t : src) keep.push_back(t != Vocabulary::kPad);
  return keep;
}

std::string join(const std::vector<std::string>& toks, std::size_t skip = 0) {
  std::string s;
  for (std::size_t i = skip; i < toks.size(); ++i) {
    if (i > skip) s += ' ';
    s += toks[i];
  }
  return s;
}

Vocabulary vocab_from_line(const std::string& line) {
  Vocabulary v;
  for (auto t : split_ws(line)) v.add(std::string(t));
  return v;
}

}  // namespace

T2GModel T2GModel::create(Vocabulary source, Vocabulary target, const nn::TransformerConfig& cfg,
                          std::uint64_t seed) {
  cfg.validate();
  T2GModel m;
  m.source = std::move(source);
  m.target = std::move(target);
  m.cfg = cfg;
  m.params = nn::ParamStore(seed);
  const double emb_std = 1.0 / std::sqrt(static_cast<double>(cfg.hidden));
  m.source_embedding = m.params.normal("source_embedding", m.source.size(), cfg.hidden, emb_std);
  m.target_embedding = m.params.normal("target_embedding", m.target.size(), cfg.hidden, emb_std);
  m.encoder = nn::EncoderStack::create(m.params, "encoder", cfg);
  m.decoder = nn::DecoderStack::create(m.params, "decoder", cfg);
  m.projection = nn::LinearLayer::create(m.params, "projection", cfg.hidden, m.target.size());
  return m;
}

Tensor encode_source(const T2GModel& model, const TokenSequence& src, Rng* dropout_rng) {
  if (src.empty()) throw ShapeError("cannot encode an empty source sequence");
  const Tensor x = embed_tokens(model.source_embedding, src, model.cfg.hidden, model.positional_encoding);
  if (has_padding(src)) {
    const nn::Mask mask = nn::key_padding_mask(static_cast<Index>(src.size()), non_pad(src));
    return nn::transformer_encoder(model.encoder, x, &mask, dropout_rng);
  }
  return nn::transformer_encoder(model.encoder, x, nullptr, dropout_rng);
}

Tensor decode_logits(const T2GModel& model, const Tensor& memory, const TokenSequence& src,
                     const TokenSequence& decoder_input, Rng* dropout_rng) {
  const Tensor y = embed_tokens(model.target_embedding, decoder_input, model.cfg.hidden, model.positional_encoding);
  Tensor h;
  if (has_padding(src)) {
    const nn::Mask mask = nn::key_padding_mask(static_cast<Index>(decoder_input.size()), non_pad(src));
    h = nn::transformer_decoder(model.decoder, y, memory, true, &mask, dropout_rng);
  } else {
    h = nn::transformer_decoder(model.decoder, y, memory, true, nullptr, dropout_rng);
  }
  return model.projection(h);
}

Tensor teacher_forced_loss(const T2GModel& model, const TokenSequence& src, const TokenSequence& tgt,
                           Rng* dropout_rng, int* correct) {
  TokenSequence input{Vocabulary::kBos};
  input.insert(input.end(), tgt.begin(), tgt.end());
  TokenSequence expected(tgt);
  expected.push_back(Vocabulary::kEos);

  const Tensor memory = encode_source(model, src, dropout_rng);
  const Tensor logits = decode_logits(model, memory, src, input, dropout_rng);
  if (correct) {
    *correct = 0;
    for (Index r = 0; r < logits.rows(); ++r) {
      Index arg = 0;
      logits.value().row(r).maxCoeff(&arg);
      if (arg == expected[static_cast<std::size_t>(r)]) ++*correct;
    }
  }
  return nn::cross_entropy(logits, expected, Vocabulary::kPad);
}

TokenSequence greedy_translate(const T2GModel& model, const TokenSequence& src, int max_len) {
  if (max_len <= 0) max_len = default_max_len(src);
  nn::NoGradGuard guard;
  const Tensor memory = encode_source(model, src);
  TokenSequence input{Vocabulary::kBos};
  TokenSequence out;
  while (static_cast<int>(out.size()) < max_len) {
    const Tensor logits = decode_logits(model, memory, src, input);
    Index arg = 0;
    logits.value().row(logits.rows() - 1).maxCoeff(&arg);
    const int tok = static_cast<int>(arg);
    if (tok == Vocabulary::kEos) break;
    out.push_back(tok);
    input.push_back(tok);
  }
  return out;
}

T2GTrainReport train_t2g(T2GModel& model, const std::vector<SentencePair>& pairs, const T2GTrainOptions& opts) {
  if (pairs.empty()) throw ShapeError("train_t2g: empty corpus");
  if (opts.batch_size <= 0) throw ShapeError("train_t2g: batch size must be positive");
  T2GTrainReport report;
  auto state = nn::OptimizerState::for_params(model.params, opts.lr);
  Rng order_rng(mix_seed(opts.seed, 0));
  Rng dropout_rng(mix_seed(opts.seed, 1));
  Rng* drop = model.cfg.dropout > 0.0 ? &dropout_rng : nullptr;

  std::vector<std::size_t> order(pairs.size());
  std::iota(order.begin(), order.end(), 0);
  const auto batches = static_cast<std::int64_t>((pairs.size() + static_cast<std::size_t>(opts.batch_size) - 1) /
                                                 static_cast<std::size_t>(opts.batch_size));
  const double total_steps = static_cast<double>(batches * std::max(opts.epochs, 1));
  for (int epoch = 0; epoch < opts.epochs; ++epoch) {
    for (std::size_t i = order.size(); i > 1; --i)
      std::swap(order[i - 1], order[static_cast<std::size_t>(order_rng.integer(0, static_cast<std::int64_t>(i - 1)))]);
    double loss_sum = 0.0;
    long tokens = 0, correct_total = 0;
    for (std::size_t start = 0; start < order.size(); start += static_cast<std::size_t>(opts.batch_size)) {
      const std::size_t end = std::min(order.size(), start + static_cast<std::size_t>(opts.batch_size));
      const double inv_batch = 1.0 / static_cast<double>(end - start);
      model.params.zero_grad();
      for (std::size_t k = start; k < end; ++k) {
        const auto& [src, tgt] = pairs[order[k]];
        int correct = 0;
        Tensor loss = teacher_forced_loss(model, src, tgt, drop, &correct);
        loss_sum += loss.item();
        correct_total += correct;
        tokens += static_cast<long>(tgt.size()) + 1;
        nn::scale(loss, inv_batch).backward();
      }
      if (opts.clip_norm > 0.0) nn::clip_grad_norm(model.params, opts.clip_norm);
      if (opts.linear_decay) state.lr = opts.lr * (1.0 - static_cast<double>(report.steps) / total_steps);
      nn::adam_step(model.params, state);
      ++report.steps;
    }
    report.loss_curve.push_back(loss_sum / static_cast<double>(pairs.size()));
    report.token_accuracy.push_back(static_cast<double>(correct_total) / static_cast<double>(tokens));
  }
  return report;
}

double sequence_accuracy(const T2GModel& model, const std::vector<SentencePair>& pairs) {
  if (pairs.empty()) return 0.0;
  std::size_t hits = 0;
  for (const auto& [src, tgt] : pairs)
    if (greedy_translate(model, src) == tgt) ++hits;
  return static_cast<double>(hits) / static_cast<double>(pairs.size());
}

std::vector<std::pair<std::vector<std::string>, std::vector<std::string>>> load_parallel_corpus(
    const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::vector<std::pair<std::vector<std::string>, std::vector<std::string>>> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos) throw ParseError("expected source<TAB>target", lineno);
    std::vector<std::string> src, tgt;
    for (auto t : split_ws(std::string_view(line).substr(0, tab))) src.emplace_back(t);
    for (auto t : split_ws(std::string_view(line).substr(tab + 1))) tgt.emplace_back(t);
    out.emplace_back(std::move(src), std::move(tgt));
  }
  return out;
}

void save_parallel_corpus(const std::vector<std::pair<std::vector<std::string>, std::vector<std::string>>>& pairs,
                          const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  for (const auto& [src, tgt] : pairs) out << join(src) << '\t' << join(tgt) << '\n';
}

void save_t2g(const T2GModel& model, const std::filesystem::path& path) {
  nn::save_checkpoint(model.params, path);
  write_key_values({{"kind", "t2g"},
                    {"layers", std::to_string(model.cfg.layers)},
                    {"heads", std::to_string(model.cfg.heads)},
                    {"hidden", std::to_string(model.cfg.hidden)},
                    {"ff_mult", std::to_string(model.cfg.ff_mult)},
                    {"positional", model.positional_encoding ? "1" : "0"},
                    {"source_vocab", join(model.source.tokens(), Vocabulary::kReserved)},
                    {"target_vocab", join(model.target.tokens(), Vocabulary::kReserved)}},
                   path.string() + ".meta");
}

T2GModel load_t2g(const std::filesystem::path& path) {
  const auto meta = read_key_values(path.string() + ".meta");
  if (require_key(meta, "kind") != "t2g") throw FormatError(path.string() + " is not a text-to-gloss model");
  nn::TransformerConfig cfg;
  auto int_key = [&](const std::string& k) {
    const auto v = parse_int<int>(require_key(meta, k));
    if (!v) throw ParseError("bad integer for '" + k + "'");
    return *v;
  };
  cfg.layers = int_key("layers");
  cfg.heads = int_key("heads");
  cfg.hidden = int_key("hidden");
  cfg.ff_mult = int_key("ff_mult");
  T2GModel model = T2GModel::create(vocab_from_line(require_key(meta, "source_vocab")),
                                    vocab_from_line(require_key(meta, "target_vocab")), cfg, 0);
  model.positional_encoding = require_key(meta, "positional") == "1";
  nn::load_into(model.params, nn::load_checkpoint(path));
  return model;
}

}  // namespace slp
