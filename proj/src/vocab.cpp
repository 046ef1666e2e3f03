#include "slp/vocab.hpp"

#include <algorithm>
#include <set>

namespace slp {

Vocabulary::Vocabulary() {
  for (const char* t : {"<pad>", "<bos>", "<eos>", "<unk>"}) add(t);
}

Vocabulary Vocabulary::from_tokens(const std::vector<std::string>& tokens) {
  Vocabulary v;
  const std::set<std::string> sorted(tokens.begin(), tokens.end());
  for (const auto& t : sorted) v.add(t);
  return v;
}

int Vocabulary::add(const std::string& token) {
  auto it = map_.find(token);
  if (it != map_.end()) return it->second;
  const int id = size();
  tokens_.push_back(token);
  map_.emplace(token, id);
  return id;
}

int Vocabulary::index(const std::string& token) const {
  auto it = map_.find(token);
  return it == map_.end() ? kUnk : it->second;
}

int Vocabulary::at(const std::string& token) const {
  auto it = map_.find(token);
  if (it == map_.end()) throw LookupError(token);
  return it->second;
}

const std::string& Vocabulary::token(int index) const {
  if (index < 0 || index >= size()) throw LookupError("#" + std::to_string(index));
  return tokens_[static_cast<std::size_t>(index)];
}

TokenSequence Vocabulary::encode(const std::vector<std::string>& words) const {
  TokenSequence out;
  out.reserve(words.size());
  for (const auto& w : words) out.push_back(index(w));
  return out;
}

std::vector<std::string> Vocabulary::decode(const TokenSequence& seq) const {
  std::vector<std::string> out;
  for (int id : seq)
    if (id >= kReserved || id == kUnk) out.push_back(token(id));
  return out;
}

}  // namespace slp
