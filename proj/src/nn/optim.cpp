#include "slp/nn/optim.hpp"

#include <cmath>

namespace slp::nn {

OptimizerState OptimizerState::for_params(const ParamStore& params, double lr) {
  OptimizerState s;
  s.lr = lr;
  for (const auto& [_, t] : params) {
    s.first_moment.push_back(Matrix::Zero(t.rows(), t.cols()));
    s.second_moment.push_back(Matrix::Zero(t.rows(), t.cols()));
  }
  return s;
}

void adam_step(ParamStore& params, OptimizerState& state) {
  if (state.first_moment.size() != params.size()) throw ShapeError("optimizer state does not match parameters");
  ++state.step;
  const double c1 = 1.0 - std::pow(state.beta1, static_cast<double>(state.step));
  const double c2 = 1.0 - std::pow(state.beta2, static_cast<double>(state.step));
  std::size_t i = 0;
  for (auto& [name, t] : params) {
    if (!t.has_grad()) throw ShapeError("parameter '" + name + "' has no gradient");
    Matrix& m = state.first_moment[i];
    Matrix& v = state.second_moment[i];
    if (m.rows() != t.rows() || m.cols() != t.cols()) throw ShapeError("moment shape mismatch for '" + name + "'");
    const Matrix& g = t.grad();
    m = state.beta1 * m + (1.0 - state.beta1) * g;
    v = state.beta2 * v + (1.0 - state.beta2) * g.cwiseAbs2();
    t.mutable_value().array() -=
        state.lr * (m.array() / c1) / ((v.array() / c2).sqrt() + state.eps);
    ++i;
  }
}

double clip_grad_norm(ParamStore& params, double max_norm) {
  double sq = 0.0;
  for (const auto& [_, t] : params)
    if (t.has_grad()) sq += t.grad().squaredNorm();
  const double norm = std::sqrt(sq);
  if (norm > max_norm && norm > 0.0) {
    const double k = max_norm / norm;
    for (auto& [_, t] : params)
      if (t.has_grad()) t.mutable_grad() *= k;
  }
  return norm;
}

}  // namespace slp::nn
