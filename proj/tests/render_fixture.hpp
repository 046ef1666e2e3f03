#pragma once

// Golden render of the bundled fixture: frames plus heatmaps, hashed per file.

#include <fstream>
#include <map>
#include <string>

#include "slp/hash.hpp"
#include "slp/pose_io.hpp"
#include "slp/render.hpp"
#include "support.hpp"

namespace slp::test {

inline constexpr int kFixtureSize = 64;

/// File name -> FNV-1a hex of every file rendered from the fixture.
inline std::map<std::string, std::string> render_fixture_hashes(const std::filesystem::path& dir) {
  const auto spec = SkeletonSpec::upper_body();
  const auto seq = load_pose_sequence(data_dir() / "render_fixture.pose", &spec);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  render_video(seq, spec, kFixtureSize, kFixtureSize, dir);
  const auto view = Viewport::fit(seq, kFixtureSize, kFixtureSize);
  for (Index i = 0; i < seq.size(); ++i) {
    char name[32];
    std::snprintf(name, sizeof name, "frame_%06lld.hmap", static_cast<long long>(i));
    save_heatmap(pose_to_heatmap(seq.frame(i), spec, view, default_sigma(kFixtureSize)), dir / name);
  }
  std::map<std::string, std::string> out;
  for (const auto& e : std::filesystem::directory_iterator(dir)) out[e.path().filename().string()] = hash_file(e.path());
  return out;
}

inline std::map<std::string, std::string> load_golden(const std::filesystem::path& path) {
  std::map<std::string, std::string> out;
  std::ifstream in(path);
  for (std::string name, hash; in >> name >> hash;) out[name] = hash;
  return out;
}

}  // namespace slp::test
