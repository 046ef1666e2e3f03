#pragma once

#include <string>
#include <vector>

namespace slp {

struct BleuOptions {
  /// Add-one smoothing of the 2- to 4-gram precisions.
  bool smoothing = true;
};

/// Corpus BLEU-4: geometric mean of clipped 1..4-gram precisions times the
/// brevity penalty. Throws ShapeError if the counts differ or the corpus is empty.
template <typename Token>
double bleu4(const std::vector<std::vector<Token>>& hypotheses, const std::vector<std::vector<Token>>& references,
             const BleuOptions& opts = {});

/// Length of the longest common subsequence.
template <typename Token>
std::size_t lcs_length(const std::vector<Token>& a, const std::vector<Token>& b);

/// Mean per-pair LCS F1.
template <typename Token>
double rouge_l(const std::vector<std::vector<Token>>& hypotheses, const std::vector<std::vector<Token>>& references);

}  // namespace slp
