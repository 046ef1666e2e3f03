#include "slp/metrics.hpp"

#include <cmath>
#include <map>

#include "slp/error.hpp"

namespace slp {

namespace {

template <typename Token>
std::map<std::vector<Token>, int> ngram_counts(const std::vector<Token>& seq, std::size_t n) {
  std::map<std::vector<Token>, int> counts;
  for (std::size_t i = 0; i + n <= seq.size(); ++i) ++counts[std::vector<Token>(seq.begin() + i, seq.begin() + i + n)];
  return counts;
}

void check_counts(std::size_t h, std::size_t r) {
  if (h != r)
    throw ShapeError(std::to_string(h) + " hypotheses but " + std::to_string(r) + " references");
  if (r == 0) throw ShapeError("empty corpus");
}

}  // namespace

template <typename Token>
double bleu4(const std::vector<std::vector<Token>>& hypotheses, const std::vector<std::vector<Token>>& references,
             const BleuOptions& opts) {
  check_counts(hypotheses.size(), references.size());
  double matches[4] = {0, 0, 0, 0}, totals[4] = {0, 0, 0, 0};
  double hyp_len = 0, ref_len = 0;
  for (std::size_t i = 0; i < hypotheses.size(); ++i) {
    const auto& hyp = hypotheses[i];
    const auto& ref = references[i];
    hyp_len += static_cast<double>(hyp.size());
    ref_len += static_cast<double>(ref.size());
    for (std::size_t n = 1; n <= 4; ++n) {
      const auto ref_counts = ngram_counts(ref, n);
      for (const auto& [gram, count] : ngram_counts(hyp, n)) {
        const auto it = ref_counts.find(gram);
        if (it != ref_counts.end()) matches[n - 1] += std::min(count, it->second);
      }
      if (hyp.size() >= n) totals[n - 1] += static_cast<double>(hyp.size() - n + 1);
    }
  }
  if (hyp_len == 0 || matches[0] == 0) return 0.0;
  double log_sum = 0.0;
  for (int n = 0; n < 4; ++n) {
    double p;
    if (n > 0 && opts.smoothing) {
      p = (matches[n] + 1.0) / (totals[n] + 1.0);
    } else {
      if (matches[n] == 0) return 0.0;
      p = matches[n] / totals[n];
    }
    log_sum += 0.25 * std::log(p);
  }
  const double bp = hyp_len >= ref_len ? 1.0 : std::exp(1.0 - ref_len / hyp_len);
  return bp * std::exp(log_sum);
}

template <typename Token>
std::size_t lcs_length(const std::vector<Token>& a, const std::vector<Token>& b) {
  std::vector<std::size_t> prev(b.size() + 1, 0), cur(b.size() + 1, 0);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j)
      cur[j] = a[i - 1] == b[j - 1] ? prev[j - 1] + 1 : std::max(prev[j], cur[j - 1]);
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

template <typename Token>
double rouge_l(const std::vector<std::vector<Token>>& hypotheses, const std::vector<std::vector<Token>>& references) {
  check_counts(hypotheses.size(), references.size());
  double total = 0.0;
  for (std::size_t i = 0; i < hypotheses.size(); ++i) {
    const auto& hyp = hypotheses[i];
    const auto& ref = references[i];
    if (hyp.empty() && ref.empty()) {
      total += 1.0;
      continue;
    }
    const double lcs = static_cast<double>(lcs_length(hyp, ref));
    if (lcs == 0) continue;
    const double p = lcs / static_cast<double>(hyp.size());
    const double r = lcs / static_cast<double>(ref.size());
    total += 2.0 * p * r / (p + r);
  }
  return total / static_cast<double>(hypotheses.size());
}

template double bleu4(const std::vector<std::vector<std::string>>&, const std::vector<std::vector<std::string>>&,
                      const BleuOptions&);
template double bleu4(const std::vector<std::vector<int>>&, const std::vector<std::vector<int>>&, const BleuOptions&);
template std::size_t lcs_length(const std::vector<std::string>&, const std::vector<std::string>&);
template std::size_t lcs_length(const std::vector<int>&, const std::vector<int>&);
template double rouge_l(const std::vector<std::vector<std::string>>&, const std::vector<std::vector<std::string>>&);
template double rouge_l(const std::vector<std::vector<int>>&, const std::vector<std::vector<int>>&);

}  // namespace slp
