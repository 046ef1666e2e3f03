#pragma once

#include <string>
#include <unordered_map>
#include <vector>

#include "slp/error.hpp"

namespace slp {

using TokenSequence = std::vector<int>;

/// Token <-> index map with reserved <pad>, <bos>, <eos>, <unk> at 0..3.
class Vocabulary {
 public:
  static constexpr int kPad = 0;
  static constexpr int kBos = 1;
  static constexpr int kEos = 2;
  static constexpr int kUnk = 3;
  static constexpr int kReserved = 4;

  Vocabulary();
  /// Reserved tokens followed by the distinct `tokens` in sorted order.
  static Vocabulary from_tokens(const std::vector<std::string>& tokens);

  int add(const std::string& token);
  /// Index of `token`, or kUnk.
  int index(const std::string& token) const;
  /// Index of `token`; throws LookupError if absent.
  int at(const std::string& token) const;
  bool contains(const std::string& token) const { return map_.count(token) != 0; }
  const std::string& token(int index) const;
  int size() const { return static_cast<int>(tokens_.size()); }
  const std::vector<std::string>& tokens() const { return tokens_; }

  TokenSequence encode(const std::vector<std::string>& words) const;
  /// Drops reserved tokens.
  std::vector<std::string> decode(const TokenSequence& seq) const;

  bool operator==(const Vocabulary& o) const { return tokens_ == o.tokens_; }

 private:
  std::vector<std::string> tokens_;
  std::unordered_map<std::string, int> map_;
};

}  // namespace slp
