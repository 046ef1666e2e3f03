#include "slp/fsnet.hpp"

#include <cmath>
#include <numeric>

#include "slp/keyvalue.hpp"
#include "slp/nn/checkpoint.hpp"
#include "slp/nn/optim.hpp"
#include "slp/numtext.hpp"

namespace slp {

using nn::Tensor;

Matrix ContinuousRepr::counters() const {
  Matrix c(size(), 2);
  c.col(0) = c_sign;
  c.col(1) = c_global;
  return c;
}

ContinuousRepr build_representation(const InterpolatedSequence& iseq, const std::vector<int>& gloss_ids,
                                    int interp_id) {
  iseq.validate();
  const Index Q = iseq.size();
  ContinuousRepr r;
  r.coords = iseq.seq.data;
  r.gloss_ids.resize(static_cast<std::size_t>(Q));
  r.c_sign.resize(Q);
  r.c_global.resize(Q);
  for (Index q = 0; q < Q; ++q) {
    const Provenance& pv = iseq.provenance[static_cast<std::size_t>(q)];
    if (pv.is_sign()) {
      if (pv.index < 0 || static_cast<std::size_t>(pv.index) >= gloss_ids.size())
        throw ShapeError("frame " + std::to_string(q) + " belongs to sign " + std::to_string(pv.index) + " but only " +
                         std::to_string(gloss_ids.size()) + " gloss ids were given");
      r.gloss_ids[static_cast<std::size_t>(q)] = gloss_ids[static_cast<std::size_t>(pv.index)];
      r.c_sign(q) = pv.length > 1 ? static_cast<double>(pv.position - 1) / (pv.length - 1) : 0.0;
    } else {
      r.gloss_ids[static_cast<std::size_t>(q)] = interp_id;
      r.c_sign(q) = static_cast<double>(pv.position) / (pv.length + 1);
    }
    r.c_global(q) = Q > 1 ? static_cast<double>(q) / static_cast<double>(Q - 1) : 0.0;
  }
  if (Q > 0 && static_cast<std::size_t>(iseq.provenance.back().index + 1) != gloss_ids.size())
    throw ShapeError("interpolated sequence has " + std::to_string(iseq.provenance.back().index + 1) +
                     " signs but " + std::to_string(gloss_ids.size()) + " gloss ids were given");
  return r;
}

FSNetModel FSNetModel::create(Vocabulary glosses, int coord_width, const FSNetConfig& cfg, std::uint64_t seed) {
  cfg.transformer.validate();
  if (coord_width <= 0) throw ShapeError("coordinate width must be positive");
  if (cfg.gloss_embedding_dim <= 0) throw ShapeError("gloss embedding size must be positive");
  FSNetModel m;
  m.glosses = std::move(glosses);
  m.cfg = cfg;
  m.coord_width = coord_width;
  m.params = nn::ParamStore(seed);
  const int H = cfg.transformer.hidden;
  m.encoder_embedding = m.params.normal("gloss_embedding", m.glosses.size(), H, 1.0 / std::sqrt(double(H)));
  m.frame_embedding = m.params.normal("frame_gloss_embedding", m.glosses.size() + 1, cfg.gloss_embedding_dim,
                                      1.0 / std::sqrt(double(cfg.gloss_embedding_dim)));
  m.input_projection =
      nn::LinearLayer::create(m.params, "input_projection", coord_width + cfg.gloss_embedding_dim + 2, H);
  m.gloss_encoder = nn::EncoderStack::create(m.params, "gloss_encoder", cfg.transformer);
  m.frame_stack = nn::DecoderStack::create(m.params, "frame_encoder", cfg.transformer);
  m.head = nn::LinearLayer::create(m.params, "head", H, 1);
  return m;
}

std::vector<int> gloss_ids(const FSNetModel& model, const std::vector<std::string>& glosses) {
  std::vector<int> ids;
  ids.reserve(glosses.size());
  for (const auto& g : glosses) ids.push_back(model.glosses.at(g));
  return ids;
}

Tensor encode_gloss(const FSNetModel& model, const std::vector<int>& ids) {
  if (ids.empty()) throw ShapeError("cannot encode an empty gloss sequence");
  for (int id : ids)
    if (id < Vocabulary::kReserved || id >= model.glosses.size()) throw LookupError("gloss id " + std::to_string(id));
  const int H = model.cfg.transformer.hidden;
  Tensor x = nn::scale(nn::embedding(model.encoder_embedding, ids), std::sqrt(static_cast<double>(H)));
  if (model.cfg.positional_encoding) x = nn::add_constant(x, nn::sinusoidal_encoding(static_cast<Index>(ids.size()), H));
  return nn::transformer_encoder(model.gloss_encoder, x);
}

Tensor fsnet_forward(const FSNetModel& model, const ContinuousRepr& repr, const Tensor& gloss_memory) {
  if (repr.coords.cols() != model.coord_width)
    throw ShapeError("representation has " + std::to_string(repr.coords.cols()) + " coordinates, model expects " +
                     std::to_string(model.coord_width));
  if (static_cast<Index>(repr.gloss_ids.size()) != repr.size() || repr.c_sign.size() != repr.size() ||
      repr.c_global.size() != repr.size())
    throw ShapeError("representation fields differ in length");
  if (repr.size() == 0) throw ShapeError("empty representation");
  if (gloss_memory.cols() != model.cfg.transformer.hidden) throw ShapeError("gloss memory width mismatch");
  const Tensor features = nn::concat_cols(
      {Tensor(repr.coords), nn::embedding(model.frame_embedding, repr.gloss_ids), Tensor(repr.counters())});
  Tensor x = model.input_projection(features);
  if (model.cfg.positional_encoding)
    x = nn::add_constant(x, nn::sinusoidal_encoding(repr.size(), model.cfg.transformer.hidden));
  const Tensor h = nn::transformer_decoder(model.frame_stack, x, gloss_memory, false);
  return nn::sigmoid(model.head(h));
}

Tensor fsnet_loss(const Tensor& probs, const SelectionMask& target) {
  if (static_cast<std::size_t>(probs.numel()) != target.size())
    throw ShapeError("probabilities cover " + std::to_string(probs.numel()) + " frames, mask " +
                     std::to_string(target.size()));
  std::vector<double> t(target.size());
  for (std::size_t i = 0; i < t.size(); ++i) t[i] = target[i] ? 1.0 : 0.0;
  return nn::binary_cross_entropy(probs, t);
}

TrainingExample make_training_example(const std::vector<std::string>& glosses, const DictionaryStore& store,
                                      const PoseSequence& target, int n_li) {
  TrainingExample ex;
  ex.glosses = glosses;
  ex.interp = build_interpolated_sequence(stack_dictionary(glosses, store), n_li);
  ex.target = target;
  const CostMatrix costs = pairwise_costs(ex.interp.seq, target);
  ex.target_mask = collapse_path(dtw(costs), costs);
  return ex;
}

SelectionMask threshold_mask(const Tensor& probs, double threshold) {
  const auto n = static_cast<std::size_t>(probs.numel());
  SelectionMask mask(n);
  const double* p = probs.value().data();
  for (std::size_t i = 0; i < n; ++i) mask.bits[i] = p[i] >= threshold ? 1 : 0;
  if (n > 0) mask.bits[n - 1] = 1;
  return mask;
}

namespace {

struct Prepared {
  std::vector<int> ids;
  ContinuousRepr repr;
};

Prepared prepare(const FSNetModel& model, const std::vector<std::string>& glosses, const InterpolatedSequence& iseq) {
  Prepared p;
  p.ids = gloss_ids(model, glosses);
  p.repr = build_representation(iseq, p.ids, model.interp_id());
  return p;
}

Tensor forward_prepared(const FSNetModel& model, const Prepared& p) {
  return fsnet_forward(model, p.repr, encode_gloss(model, p.ids));
}

SelectionMask concat_masks(const std::vector<SelectionMask>& masks) {
  SelectionMask all;
  for (const auto& m : masks) all.bits.insert(all.bits.end(), m.bits.begin(), m.bits.end());
  return all;
}

}  // namespace

SelectionMask predict_mask(const FSNetModel& model, const std::vector<std::string>& glosses,
                           const InterpolatedSequence& interp, double threshold) {
  nn::NoGradGuard guard;
  return threshold_mask(forward_prepared(model, prepare(model, glosses, interp)), threshold);
}

AlignmentMetrics evaluate_masks(const FSNetModel& model, const std::vector<TrainingExample>& examples,
                                const std::vector<SelectionMask>& truth, double threshold) {
  if (truth.size() != examples.size()) throw ShapeError("one reference mask per example is required");
  std::vector<SelectionMask> pred;
  pred.reserve(examples.size());
  for (const auto& ex : examples) pred.push_back(predict_mask(model, ex.glosses, ex.interp, threshold));
  return alignment_metrics(concat_masks(pred), concat_masks(truth));
}

FSNetTrainReport train_fsnet(FSNetModel& model, const std::vector<TrainingExample>& train,
                             const FSNetTrainOptions& opts, const std::vector<TrainingExample>& heldout,
                             const std::vector<SelectionMask>& heldout_truth) {
  if (train.empty()) throw ShapeError("train_fsnet: empty example set");
  if (opts.batch_size <= 0) throw ShapeError("train_fsnet: batch size must be positive");
  std::vector<SelectionMask> truth = heldout_truth;
  if (truth.empty())
    for (const auto& ex : heldout) truth.push_back(ex.target_mask);

  std::vector<Prepared> prepared;
  prepared.reserve(train.size());
  for (const auto& ex : train) {
    if (ex.target_mask.size() != static_cast<std::size_t>(ex.interp.size()))
      throw ShapeError("target mask length differs from the interpolated sequence");
    prepared.push_back(prepare(model, ex.glosses, ex.interp));
  }

  FSNetTrainReport report;
  auto state = nn::OptimizerState::for_params(model.params, opts.lr);
  Rng order_rng(mix_seed(opts.seed, 0));
  std::vector<std::size_t> order(train.size());
  std::iota(order.begin(), order.end(), 0);
  for (int epoch = 0; epoch < opts.epochs; ++epoch) {
    for (std::size_t i = order.size(); i > 1; --i)
      std::swap(order[i - 1], order[static_cast<std::size_t>(order_rng.integer(0, static_cast<std::int64_t>(i - 1)))]);
    double loss_sum = 0.0;
    for (std::size_t start = 0; start < order.size(); start += static_cast<std::size_t>(opts.batch_size)) {
      const std::size_t end = std::min(order.size(), start + static_cast<std::size_t>(opts.batch_size));
      const double inv_batch = 1.0 / static_cast<double>(end - start);
      model.params.zero_grad();
      for (std::size_t k = start; k < end; ++k) {
        const std::size_t i = order[k];
        Tensor loss = fsnet_loss(forward_prepared(model, prepared[i]), train[i].target_mask);
        loss_sum += loss.item();
        nn::scale(loss, inv_batch).backward();
      }
      if (opts.clip_norm > 0.0) nn::clip_grad_norm(model.params, opts.clip_norm);
      nn::adam_step(model.params, state);
      ++report.steps;
    }
    report.loss_curve.push_back(loss_sum / static_cast<double>(train.size()));
    if (!heldout.empty()) report.heldout.push_back(evaluate_masks(model, heldout, truth, opts.threshold));
  }
  return report;
}

Production produce(const FSNetModel& model, const std::vector<std::string>& glosses, const DictionaryStore& store,
                   int n_li, double threshold) {
  Production out;
  out.interp = build_interpolated_sequence(stack_dictionary(glosses, store), n_li);
  nn::NoGradGuard guard;
  const Tensor probs = forward_prepared(model, prepare(model, glosses, out.interp));
  out.probs = Eigen::Map<const Eigen::VectorXd>(probs.value().data(), probs.numel());
  out.mask = threshold_mask(probs, threshold);
  out.output = apply_selection(out.interp, out.mask);
  return out;
}

PoseSequence produce_continuous(const FSNetModel& model, const std::vector<std::string>& glosses,
                                const DictionaryStore& store, int n_li, double threshold) {
  return produce(model, glosses, store, n_li, threshold).output;
}

void save_fsnet(const FSNetModel& model, const std::filesystem::path& path) {
  nn::save_checkpoint(model.params, path);
  std::string vocab;
  for (std::size_t i = Vocabulary::kReserved; i < model.glosses.tokens().size(); ++i) {
    if (!vocab.empty()) vocab += ' ';
    vocab += model.glosses.tokens()[i];
  }
  const auto& t = model.cfg.transformer;
  write_key_values({{"kind", "fsnet"},
                    {"layers", std::to_string(t.layers)},
                    {"heads", std::to_string(t.heads)},
                    {"hidden", std::to_string(t.hidden)},
                    {"ff_mult", std::to_string(t.ff_mult)},
                    {"gloss_embedding_dim", std::to_string(model.cfg.gloss_embedding_dim)},
                    {"positional", model.cfg.positional_encoding ? "1" : "0"},
                    {"coord_width", std::to_string(model.coord_width)},
                    {"glosses", vocab}},
                   path.string() + ".meta");
}

FSNetModel load_fsnet(const std::filesystem::path& path) {
  const auto meta = read_key_values(path.string() + ".meta");
  if (require_key(meta, "kind") != "fsnet") throw FormatError(path.string() + " is not a frame selection model");
  auto int_key = [&](const std::string& k) {
    const auto v = parse_int<int>(require_key(meta, k));
    if (!v) throw ParseError("bad integer for '" + k + "'");
    return *v;
  };
  FSNetConfig cfg;
  cfg.transformer.layers = int_key("layers");
  cfg.transformer.heads = int_key("heads");
  cfg.transformer.hidden = int_key("hidden");
  cfg.transformer.ff_mult = int_key("ff_mult");
  cfg.gloss_embedding_dim = int_key("gloss_embedding_dim");
  cfg.positional_encoding = require_key(meta, "positional") == "1";
  Vocabulary vocab;
  for (auto g : split_ws(require_key(meta, "glosses"))) vocab.add(std::string(g));
  FSNetModel model = FSNetModel::create(std::move(vocab), int_key("coord_width"), cfg, 0);
  nn::load_into(model.params, nn::load_checkpoint(path));
  return model;
}

}  // namespace slp
