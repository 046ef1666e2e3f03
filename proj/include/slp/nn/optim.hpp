#pragma once

#include <cstdint>
#include <vector>

#include "slp/nn/params.hpp"

namespace slp::nn {

struct OptimizerState {
  double lr = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
  std::int64_t step = 0;
  std::vector<Matrix> first_moment;
  std::vector<Matrix> second_moment;

  /// Zero moments shaped like every parameter of `params`.
  static OptimizerState for_params(const ParamStore& params, double lr = 1e-3);
};

/// One bias-corrected Adam update over every parameter, in store order.
/// Throws ShapeError if a parameter has no gradient buffer.
void adam_step(ParamStore& params, OptimizerState& state);

/// Rescales all gradients so their joint L2 norm is at most `max_norm`.
/// Returns the norm before clipping.
double clip_grad_norm(ParamStore& params, double max_norm);

}  // namespace slp::nn
