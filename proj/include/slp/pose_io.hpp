#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "slp/pose.hpp"

namespace slp {

// POSE1 text format:
//   line 1:  POSE1 <J> <dims> <fps>
//   line k:  J*dims whitespace-separated reals (one frame)
// Reals are written in shortest round-trip form, so save/load is exact.

PoseSequence read_pose_sequence(std::istream& in, const SkeletonSpec* skeleton = nullptr);
void write_pose_sequence(std::ostream& out, const PoseSequence& seq);

/// The file carries no limb list. If `skeleton` is given and matches the
/// header's J/dims, its limbs are attached; otherwise the limb list is empty.
PoseSequence load_pose_sequence(const std::filesystem::path& path,
                                const SkeletonSpec* skeleton = nullptr);
void save_pose_sequence(const PoseSequence& seq, const std::filesystem::path& path);

/// Manifest lines `gloss_id,pose_path`; relative paths resolve against the
/// manifest's directory.
DictionaryStore load_dictionary(const std::filesystem::path& manifest,
                                const SkeletonSpec* skeleton = nullptr);

}  // namespace slp
