#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "slp/align.hpp"
#include "slp/pose.hpp"
#include "slp/vocab.hpp"

namespace slp {

struct SyntheticConfig {
  std::uint64_t seed = 42;
  int vocab_size = 30;
  SkeletonSpec skeleton = SkeletonSpec::upper_body();
  int sign_min_frames = 12;
  int sign_max_frames = 20;
  /// Sinusoids summed per joint coordinate.
  int components = 3;
  /// Bound on the summed sinusoid amplitudes per coordinate.
  double amplitude = 0.25;
  /// Highest sinusoid frequency, cycles per frame.
  double max_frequency = 0.08;

  int n_li = kDefaultInterpFrames;
  /// Probability that a sign frame or an interpolation frame is dropped.
  double drop_prob = 0.3;
  /// Frames trimmed at the start and end of each sign, drawn per gloss.
  int trim_min = 0;
  int trim_max = 1;
  /// Interpolation frames always kept per transition, evenly spaced.
  int crossfade_frames = 1;
  /// Glosses per segment.
  int segment_min_glosses = 2;
  int segment_max_glosses = 5;

  // Parallel text.
  int text_vocab_size = 50;
  int filler_vocab_size = 8;
  int text_min_len = 2;
  int text_max_len = 10;
  /// Fraction of gloss tokens that trade places with their successor in the spoken order.
  double mover_fraction = 0.2;
  /// Probability of a filler word after each spoken content word.
  double filler_rate = 0.3;

  void validate() const;
};

/// "G000", "G001", ...
std::string gloss_name(int index);
/// "x00", "x01", ...
std::string filler_name(int index);

/// Per-coordinate displacement bound between adjacent frames implied by the
/// sinusoid parameters; a joint moves at most sqrt(dims) times this.
double coordinate_step_bound(const SyntheticConfig& cfg);

/// One seeded sinusoid-sum trajectory per gloss.
DictionaryStore gen_dictionary(const SyntheticConfig& cfg);

struct ContinuousSample {
  InterpolatedSequence interp;
  PoseSequence target;
  SelectionMask gt_mask;
};

/// Whether frame p (1-based) of `gloss` is dropped. Keyed on (seed, gloss, p)
/// so a sign is shortened the same way wherever it occurs.
bool sign_frame_dropped(const SyntheticConfig& cfg, const std::string& gloss, int p, int length);
/// Whether interpolation frame j (1-based) is dropped.
bool interp_frame_dropped(const SyntheticConfig& cfg, int j);

/// Builds I from the store and removes frames per the drop schedule. Every
/// sign keeps at least its middle frame and the final frame of I is always kept.
ContinuousSample gen_continuous(const SyntheticConfig& cfg, const DictionaryStore& store,
                                const std::vector<std::string>& glosses);

/// Seeded gloss sequence for segment `index`, drawn from `vocabulary`.
std::vector<std::string> gen_gloss_sequence(const SyntheticConfig& cfg, const std::vector<std::string>& vocabulary,
                                            std::uint64_t index);

/// Spoken/gloss token pairs. Mover glosses are never sentence-final and
/// never followed by another mover; the spoken side swaps every mover with
/// its successor and inserts fillers.
struct TextPair {
  std::vector<std::string> spoken;
  std::vector<std::string> gloss;
};
std::vector<TextPair> gen_parallel_text(const SyntheticConfig& cfg, std::size_t count, std::uint64_t first_index = 0);

/// Glosses that trade places with their successor.
std::vector<std::string> mover_glosses(const SyntheticConfig& cfg);

/// Inverse of the spoken-side transformation (drops fillers, undoes swaps).
std::vector<std::string> recover_gloss(const SyntheticConfig& cfg, const std::vector<std::string>& spoken);

}  // namespace slp
