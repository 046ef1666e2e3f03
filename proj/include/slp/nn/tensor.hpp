#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "slp/pose.hpp"

namespace slp::nn {

using slp::Index;
using slp::Matrix;

/// Boolean attention mask, rows = queries, cols = keys; true means "may attend".
using Mask = Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

struct Node {
  Matrix value;
  Matrix grad;  // empty until first accumulation
  std::vector<std::int64_t> shape;
  bool requires_grad = false;
  std::vector<std::shared_ptr<Node>> parents;
  std::function<void(Node&)> backward;

  void accumulate(const Matrix& g) {
    if (grad.size() == 0) grad = Matrix::Zero(value.rows(), value.cols());
    grad += g;
  }
  template <typename Expr>
  void accumulate_expr(const Expr& g) {
    if (grad.size() == 0) grad = Matrix::Zero(value.rows(), value.cols());
    grad += g;
  }
};

/// Dense value with an optional gradient. Values are stored as a matrix:
/// rank-2 tensors directly, rank-1 tensors as a single row or column (the
/// declared shape is kept separately).
class Tensor {
 public:
  Tensor() = default;
  explicit Tensor(Matrix value, bool requires_grad = false);
  static Tensor scalar(double v) { return Tensor(Matrix::Constant(1, 1, v)); }

  bool defined() const { return static_cast<bool>(node_); }
  const Matrix& value() const { return node_->value; }
  Matrix& mutable_value() { return node_->value; }
  const Matrix& grad() const { return node_->grad; }
  Matrix& mutable_grad() { return node_->grad; }
  bool has_grad() const { return node_->grad.size() == node_->value.size() && node_->grad.size() > 0; }
  bool requires_grad() const { return node_ && node_->requires_grad; }

  Index rows() const { return node_->value.rows(); }
  Index cols() const { return node_->value.cols(); }
  Index numel() const { return node_->value.size(); }
  const std::vector<std::int64_t>& shape() const { return node_->shape; }
  void set_shape(std::vector<std::int64_t> shape);

  double item() const;

  /// Reverse-mode sweep from this scalar; gradients accumulate into every
  /// reachable node that requires them.
  void backward();
  void zero_grad();

  Node* node() const { return node_.get(); }
  const std::shared_ptr<Node>& node_ptr() const { return node_; }

 private:
  explicit Tensor(std::shared_ptr<Node> n) : node_(std::move(n)) {}
  friend Tensor make_op(Matrix, std::vector<Tensor>, std::function<void(Node&)>);

  std::shared_ptr<Node> node_;
};

/// Records an operation result. The backward callback receives the result
/// node (with its grad populated) and pushes gradients into `parents`.
Tensor make_op(Matrix value, std::vector<Tensor> parents, std::function<void(Node&)> backward);

bool grad_enabled();

/// Disables graph recording in its scope (inference, finite differences).
class NoGradGuard {
 public:
  NoGradGuard();
  ~NoGradGuard();
  NoGradGuard(const NoGradGuard&) = delete;
  NoGradGuard& operator=(const NoGradGuard&) = delete;

 private:
  bool previous_;
};

}  // namespace slp::nn
