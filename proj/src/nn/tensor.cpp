#include "slp/nn/tensor.hpp"

#include <unordered_set>

namespace slp::nn {

namespace {
thread_local bool g_grad_enabled = true;
}

bool grad_enabled() { return g_grad_enabled; }

NoGradGuard::NoGradGuard() : previous_(g_grad_enabled) { g_grad_enabled = false; }
NoGradGuard::~NoGradGuard() { g_grad_enabled = previous_; }

Tensor::Tensor(Matrix value, bool requires_grad) : node_(std::make_shared<Node>()) {
  node_->shape = {static_cast<std::int64_t>(value.rows()), static_cast<std::int64_t>(value.cols())};
  node_->value = std::move(value);
  node_->requires_grad = requires_grad;
}

void Tensor::set_shape(std::vector<std::int64_t> shape) {
  std::int64_t n = 1;
  for (auto d : shape) n *= d;
  if (n != numel()) throw ShapeError("declared shape does not match element count");
  node_->shape = std::move(shape);
}

double Tensor::item() const {
  if (numel() != 1) throw ShapeError("item() on a tensor with " + std::to_string(numel()) + " elements");
  return node_->value(0, 0);
}

void Tensor::zero_grad() {
  node_->grad = Matrix::Zero(node_->value.rows(), node_->value.cols());
}

Tensor make_op(Matrix value, std::vector<Tensor> parents, std::function<void(Node&)> backward) {
  auto node = std::make_shared<Node>();
  node->shape = {static_cast<std::int64_t>(value.rows()), static_cast<std::int64_t>(value.cols())};
  node->value = std::move(value);
  if (g_grad_enabled) {
    bool any = false;
    for (const auto& p : parents) any = any || p.requires_grad();
    if (any) {
      node->requires_grad = true;
      node->parents.reserve(parents.size());
      for (auto& p : parents) node->parents.push_back(p.node_ptr());
      node->backward = std::move(backward);
    }
  }
  return Tensor(std::move(node));
}

void Tensor::backward() {
  if (numel() != 1) throw ShapeError("backward() needs a scalar");
  if (!node_->requires_grad) return;

  // Iterative post-order DFS gives a topological order (parents before children).
  std::vector<Node*> order;
  std::unordered_set<Node*> seen;
  std::vector<std::pair<Node*, std::size_t>> stack{{node_.get(), 0}};
  seen.insert(node_.get());
  while (!stack.empty()) {
    auto& [n, next] = stack.back();
    if (next < n->parents.size()) {
      Node* p = n->parents[next++].get();
      if (p->requires_grad && !p->parents.empty() && seen.insert(p).second) stack.emplace_back(p, 0);
      continue;
    }
    order.push_back(n);
    stack.pop_back();
  }

  node_->accumulate(Matrix::Ones(1, 1));
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    Node* n = *it;
    if (n->backward && n->grad.size() > 0) n->backward(*n);
  }
  // Intermediate gradients are not needed after the sweep.
  for (Node* n : order)
    if (n != node_.get() && !n->parents.empty()) n->grad.resize(0, 0);
}

}  // namespace slp::nn
