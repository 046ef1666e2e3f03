#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "slp/align.hpp"
#include "slp/nn/layers.hpp"
#include "slp/pose.hpp"
#include "slp/vocab.hpp"

namespace slp {

/// Per-frame model input for the interpolated dictionary sequence.
struct ContinuousRepr {
  Matrix coords;               // Q x (J * dims)
  std::vector<int> gloss_ids;  // gloss index, or the shared interpolation id
  Eigen::VectorXd c_sign;      // progress within the sign or interpolation block
  Eigen::VectorXd c_global;    // progress within the whole sequence

  Index size() const { return coords.rows(); }
  /// [Q, 2] matrix of (c_sign, c_global).
  Matrix counters() const;
};

/// Counters: c_sign = (p-1)/(P-1) inside a sign (0 when P = 1), j/(N+1) on
/// interpolation frame j of an N-frame block; c_global = (q-1)/(Q-1).
/// `gloss_ids[w]` is the id of sign w; throws ShapeError if the provenance
/// refers to signs that `gloss_ids` does not cover.
ContinuousRepr build_representation(const InterpolatedSequence& iseq, const std::vector<int>& gloss_ids,
                                    int interp_id);

struct FSNetConfig {
  nn::TransformerConfig transformer{2, 4, 64, 4, 0.0};
  int gloss_embedding_dim = 16;
  bool positional_encoding = true;
};

struct FSNetModel {
  Vocabulary glosses;
  FSNetConfig cfg;
  int coord_width = 0;

  nn::ParamStore params;
  nn::Tensor encoder_embedding;  // [|glosses|, hidden], gloss encoder input
  nn::Tensor frame_embedding;    // [|glosses| + 1, gloss_embedding_dim]; last row is the interpolation id
  nn::LinearLayer input_projection;
  nn::EncoderStack gloss_encoder;
  nn::DecoderStack frame_stack;  // non-causal self-attention plus cross-attention to the glosses
  nn::LinearLayer head;          // hidden -> 1

  int interp_id() const { return glosses.size(); }

  static FSNetModel create(Vocabulary glosses, int coord_width, const FSNetConfig& cfg, std::uint64_t seed);

  FSNetModel() = default;
  FSNetModel(FSNetModel&&) = default;
  FSNetModel& operator=(FSNetModel&&) = default;
  FSNetModel(const FSNetModel&) = delete;
  FSNetModel& operator=(const FSNetModel&) = delete;
};

/// Gloss ids for `glosses`; throws LookupError for unknown glosses.
std::vector<int> gloss_ids(const FSNetModel& model, const std::vector<std::string>& glosses);

/// [W, hidden] encoding of the gloss sequence.
nn::Tensor encode_gloss(const FSNetModel& model, const std::vector<int>& ids);

/// [Q, 1] selection probabilities.
nn::Tensor fsnet_forward(const FSNetModel& model, const ContinuousRepr& repr, const nn::Tensor& gloss_memory);

/// Binary cross-entropy between probabilities and the target mask.
nn::Tensor fsnet_loss(const nn::Tensor& probs, const SelectionMask& target);

struct TrainingExample {
  std::vector<std::string> glosses;
  InterpolatedSequence interp;
  PoseSequence target;
  SelectionMask target_mask;
};

/// Builds I, aligns it to `target` by DTW over frame distances and collapses
/// the path into the target mask.
TrainingExample make_training_example(const std::vector<std::string>& glosses, const DictionaryStore& store,
                                      const PoseSequence& target, int n_li = kDefaultInterpFrames);

inline constexpr double kDefaultThreshold = 0.5;

/// Mask with probs >= threshold selected and the final frame always selected.
SelectionMask threshold_mask(const nn::Tensor& probs, double threshold = kDefaultThreshold);

/// Predicted mask for an example's glosses and interpolated sequence.
SelectionMask predict_mask(const FSNetModel& model, const std::vector<std::string>& glosses,
                           const InterpolatedSequence& interp, double threshold = kDefaultThreshold);

struct FSNetTrainOptions {
  int epochs = 40;
  int batch_size = 8;
  double lr = 1e-3;
  double clip_norm = 1.0;
  double threshold = kDefaultThreshold;
  std::uint64_t seed = 42;
};

struct FSNetTrainReport {
  std::vector<double> loss_curve;              // mean training loss per epoch
  std::vector<AlignmentMetrics> heldout;       // per epoch, pooled over held-out frames
  std::int64_t steps = 0;
};

/// Adam training on the examples' target masks. Held-out metrics compare
/// predicted masks to `heldout_truth` (one per held-out example), or to the
/// held-out examples' own target masks when it is empty.
FSNetTrainReport train_fsnet(FSNetModel& model, const std::vector<TrainingExample>& train,
                             const FSNetTrainOptions& opts, const std::vector<TrainingExample>& heldout = {},
                             const std::vector<SelectionMask>& heldout_truth = {});

/// Pooled metrics of predicted masks against `truth` (one per example).
AlignmentMetrics evaluate_masks(const FSNetModel& model, const std::vector<TrainingExample>& examples,
                                const std::vector<SelectionMask>& truth, double threshold = kDefaultThreshold);

struct Production {
  InterpolatedSequence interp;
  Eigen::VectorXd probs;
  SelectionMask mask;
  PoseSequence output;
};

Production produce(const FSNetModel& model, const std::vector<std::string>& glosses, const DictionaryStore& store,
                   int n_li = kDefaultInterpFrames, double threshold = kDefaultThreshold);

/// Selected frames of the interpolated dictionary sequence.
PoseSequence produce_continuous(const FSNetModel& model, const std::vector<std::string>& glosses,
                                const DictionaryStore& store, int n_li = kDefaultInterpFrames,
                                double threshold = kDefaultThreshold);

/// Checkpoint plus `<path>.meta`.
void save_fsnet(const FSNetModel& model, const std::filesystem::path& path);
FSNetModel load_fsnet(const std::filesystem::path& path);

}  // namespace slp
