#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "slp/keyvalue.hpp"
#include "slp/synthetic.hpp"

namespace slp {

struct Segment {
  std::string id;
  std::vector<std::string> glosses;
  ContinuousSample sample;
};

struct CorpusSizes {
  std::size_t train_segments = 200;
  std::size_t heldout_segments = 40;
  std::size_t text_train = 2000;
  std::size_t text_test = 200;
};

struct SyntheticCorpus {
  SyntheticConfig cfg;
  DictionaryStore store;
  std::vector<Segment> train;
  std::vector<Segment> heldout;
  std::vector<TextPair> text_train;
  std::vector<TextPair> text_test;
};

/// Segment i of the training split uses derived seed index i, held-out
/// segment k uses index train_segments + k; text pairs likewise.
SyntheticCorpus gen_corpus(const SyntheticConfig& cfg, const CorpusSizes& sizes);

KeyValues config_to_key_values(const SyntheticConfig& cfg);
/// Starts from `base` and overrides the keys present in `kv`; unknown keys are an error.
SyntheticConfig config_from_key_values(const std::map<std::string, std::string>& kv, SyntheticConfig base = {});

// Directory layout:
//   config.txt                 generator settings (key=value)
//   dict.csv                   gloss,dict/<gloss>.pose
//   dict/<gloss>.pose
//   segments/<id>.gloss        glosses on one line
//   segments/<id>.pose         target continuous sequence
//   segments/<id>.mask         ground-truth selection mask over I
//   manifest.csv, heldout.csv  gloss_seq_file,target_pose_file
//   text_train.tsv, text_test.tsv
void write_corpus(const SyntheticCorpus& corpus, const std::filesystem::path& dir);

struct LoadedSegment {
  std::string id;
  std::vector<std::string> glosses;
  PoseSequence target;
  /// Empty when no `.mask` file sits next to the pose file.
  SelectionMask gt_mask;
};

std::vector<std::string> read_gloss_file(const std::filesystem::path& path);
void write_gloss_file(const std::vector<std::string>& glosses, const std::filesystem::path& path);

/// Manifest lines `gloss_seq_file,target_pose_file`, relative to the manifest.
std::vector<LoadedSegment> load_segments(const std::filesystem::path& manifest, const SkeletonSpec* skeleton = nullptr);

std::vector<TextPair> load_text_pairs(const std::filesystem::path& path);
void save_text_pairs(const std::vector<TextPair>& pairs, const std::filesystem::path& path);

}  // namespace slp
