#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <string>

#include "slp/nn/params.hpp"

namespace slp::nn {

/// Max over coordinates of |analytic - numeric| / max(1e-8, |analytic| + |numeric|),
/// numeric gradients by central differences with step `eps`. `fn` must be
/// scalar-valued; `x` is treated as a leaf and perturbed in place (restored on exit).
double grad_check(const std::function<Tensor(const Tensor&)>& fn, Tensor x, double eps = 1e-5);

struct GradCheckReport {
  double max_rel_error = 0.0;
  std::string worst_parameter;
  std::size_t coordinates = 0;
};

/// Same measure over every parameter of `params` for a loss closure that reads
/// them. `max_coords_per_param` caps the checked coordinates (evenly strided).
GradCheckReport grad_check_params(const std::function<Tensor()>& loss, ParamStore& params, double eps = 1e-5,
                                  std::size_t max_coords_per_param = std::numeric_limits<std::size_t>::max());

}  // namespace slp::nn
