#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "slp/nn/tensor.hpp"
#include "slp/random.hpp"

namespace slp::nn {

/// Named trainable parameters in insertion order. Tensors are handles, so
/// model structs and the store share the same storage.
class ParamStore {
 public:
  explicit ParamStore(std::uint64_t seed = 42) : seed_(seed), rng_(seed) {}

  /// Registers a parameter. A rank-1 `shape` stores the values as one row.
  Tensor add(const std::string& name, Matrix value, std::vector<std::int64_t> shape = {});
  /// Glorot-uniform [rows, cols] matrix drawn from the store's generator.
  Tensor xavier(const std::string& name, Index rows, Index cols);
  Tensor normal(const std::string& name, Index rows, Index cols, double stddev);
  /// Rank-1 parameter of `n` copies of `fill`.
  Tensor vector(const std::string& name, Index n, double fill);

  const Tensor& at(const std::string& name) const;
  Tensor& at(const std::string& name);
  bool contains(const std::string& name) const { return index_.count(name) != 0; }

  std::size_t size() const { return entries_.size(); }
  std::size_t parameter_count() const;
  auto begin() { return entries_.begin(); }
  auto end() { return entries_.end(); }
  auto begin() const { return entries_.begin(); }
  auto end() const { return entries_.end(); }

  void zero_grad();
  std::uint64_t seed() const { return seed_; }
  Rng& rng() { return rng_; }

  /// FNV-1a over names, shapes and raw values.
  std::string fingerprint() const;

 private:
  std::uint64_t seed_;
  Rng rng_;
  std::vector<std::pair<std::string, Tensor>> entries_;
  std::unordered_map<std::string, std::size_t> index_;
};

}  // namespace slp::nn
