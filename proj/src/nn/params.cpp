#include "slp/nn/params.hpp"

#include <cmath>

#include "slp/hash.hpp"

namespace slp::nn {

Tensor ParamStore::add(const std::string& name, Matrix value, std::vector<std::int64_t> shape) {
  if (contains(name)) throw ShapeError("duplicate parameter '" + name + "'");
  Tensor t(std::move(value), true);
  if (!shape.empty()) t.set_shape(std::move(shape));
  t.zero_grad();
  index_.emplace(name, entries_.size());
  entries_.emplace_back(name, t);
  return t;
}

Tensor ParamStore::xavier(const std::string& name, Index rows, Index cols) {
  const double limit = std::sqrt(6.0 / static_cast<double>(rows + cols));
  Matrix m(rows, cols);
  for (Index i = 0; i < m.size(); ++i) m.data()[i] = rng_.uniform(-limit, limit);
  return add(name, std::move(m));
}

Tensor ParamStore::normal(const std::string& name, Index rows, Index cols, double stddev) {
  Matrix m(rows, cols);
  for (Index i = 0; i < m.size(); ++i) m.data()[i] = stddev * rng_.normal();
  return add(name, std::move(m));
}

Tensor ParamStore::vector(const std::string& name, Index n, double fill) {
  return add(name, Matrix::Constant(1, n, fill), {static_cast<std::int64_t>(n)});
}

const Tensor& ParamStore::at(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) throw LookupError(name);
  return entries_[it->second].second;
}

Tensor& ParamStore::at(const std::string& name) {
  auto it = index_.find(name);
  if (it == index_.end()) throw LookupError(name);
  return entries_[it->second].second;
}

std::size_t ParamStore::parameter_count() const {
  std::size_t n = 0;
  for (const auto& [_, t] : entries_) n += static_cast<std::size_t>(t.numel());
  return n;
}

void ParamStore::zero_grad() {
  for (auto& [_, t] : entries_) t.zero_grad();
}

std::string ParamStore::fingerprint() const {
  Fnv1a h;
  for (const auto& [name, t] : entries_) {
    h.update(name);
    for (auto d : t.shape()) h.update(&d, sizeof(d));
    h.update(t.value().data(), static_cast<std::size_t>(t.numel()) * sizeof(double));
  }
  return h.hex();
}

}  // namespace slp::nn
