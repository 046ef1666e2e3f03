#pragma once

#include <filesystem>
#include <functional>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "slp/align.hpp"
#include "slp/pose.hpp"
#include "slp/random.hpp"

namespace slp::test {

inline std::filesystem::path data_dir() { return SLP_TEST_DATA; }

/// Fresh empty directory under the system temp dir.
inline std::filesystem::path scratch_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("slp_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

inline Matrix random_matrix(Rng& rng, Index rows, Index cols, double lo = -1.0, double hi = 1.0) {
  Matrix m(rows, cols);
  for (Index i = 0; i < m.size(); ++i) m.data()[i] = rng.uniform(lo, hi);
  return m;
}

inline PoseSequence random_sequence(Rng& rng, const SkeletonSpec& spec, Index frames) {
  PoseSequence seq(spec, 25.0, frames);
  seq.data = random_matrix(rng, frames, spec.width(), -2.0, 2.0);
  return seq;
}

inline SelectionMask random_mask(Rng& rng, std::size_t n, double p = 0.5) {
  SelectionMask m(n);
  for (auto& b : m.bits) b = rng.bernoulli(p) ? 1 : 0;
  return m;
}

/// Minimum summed cost over every monotonic path, enumerated recursively.
/// Costs are accumulated from (0,0) forwards, the same association order as
/// the dynamic programme, so the optimum is comparable exactly.
inline double brute_force_dtw(const Matrix& c) {
  const Index Q = c.rows(), T = c.cols();
  double best = std::numeric_limits<double>::infinity();
  std::function<void(Index, Index, double)> walk = [&](Index q, Index t, double acc) {
    acc += c(q, t);
    if (q == Q - 1 && t == T - 1) {
      best = std::min(best, acc);
      return;
    }
    if (q + 1 < Q && t + 1 < T) walk(q + 1, t + 1, acc);
    if (q + 1 < Q) walk(q + 1, t, acc);
    if (t + 1 < T) walk(q, t + 1, acc);
  };
  walk(0, 0, 0.0);
  return best;
}

/// Number of monotonic paths attaining the optimum.
inline std::size_t optimal_path_count(const Matrix& c) {
  const double best = brute_force_dtw(c);
  const Index Q = c.rows(), T = c.cols();
  std::size_t count = 0;
  std::function<void(Index, Index, double)> walk = [&](Index q, Index t, double acc) {
    acc += c(q, t);
    if (q == Q - 1 && t == T - 1) {
      if (acc == best) ++count;
      return;
    }
    if (q + 1 < Q && t + 1 < T) walk(q + 1, t + 1, acc);
    if (q + 1 < Q) walk(q + 1, t, acc);
    if (t + 1 < T) walk(q, t + 1, acc);
  };
  walk(0, 0, 0.0);
  return count;
}

/// Corpus BLEU-4 written independently of the library: n-grams as joined
/// strings, precisions multiplied directly.
inline double reference_bleu(const std::vector<std::vector<std::string>>& hyps,
                             const std::vector<std::vector<std::string>>& refs, bool smooth = true) {
  double match[5] = {0}, total[5] = {0};
  double c = 0, r = 0;
  for (std::size_t s = 0; s < hyps.size(); ++s) {
    c += static_cast<double>(hyps[s].size());
    r += static_cast<double>(refs[s].size());
    for (std::size_t n = 1; n <= 4; ++n) {
      auto grams = [n](const std::vector<std::string>& v) {
        std::map<std::string, int> g;
        for (std::size_t i = 0; i + n <= v.size(); ++i) {
          std::string key;
          for (std::size_t k = i; k < i + n; ++k) key += v[k] + "\x1f";
          ++g[key];
        }
        return g;
      };
      const auto h = grams(hyps[s]), rf = grams(refs[s]);
      for (const auto& [k, cnt] : h) {
        total[n] += cnt;
        const auto it = rf.find(k);
        if (it != rf.end()) match[n] += std::min(cnt, it->second);
      }
    }
  }
  if (c == 0 || match[1] == 0) return 0.0;
  double prod = 1.0;
  for (int n = 1; n <= 4; ++n) {
    const double p = (n > 1 && smooth) ? (match[n] + 1) / (total[n] + 1) : match[n] / total[n];
    prod *= p;
  }
  const double bp = c > r ? 1.0 : std::exp(1.0 - r / c);
  return bp * std::pow(prod, 0.25);
}

/// The fixed three-pair corpus BLEU is checked on.
inline std::vector<std::vector<std::string>> bleu_fixture_hyps() {
  return {{"the", "cat", "sat", "on", "mat"}, {"a", "b", "c", "d", "e", "f", "g"}, {"x", "y", "z", "w"}};
}
inline std::vector<std::vector<std::string>> bleu_fixture_refs() {
  return {{"the", "cat", "sat", "on", "the", "mat"}, {"a", "b", "c", "d", "f", "e", "g"}, {"x", "y", "q", "w", "z"}};
}

}  // namespace slp::test
