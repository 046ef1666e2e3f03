#include "slp/nn/gradcheck.hpp"

#include <algorithm>
#include <cmath>

namespace slp::nn {

namespace {

double relative_error(double analytic, double numeric) {
  return std::abs(analytic - numeric) / std::max(1e-8, std::abs(analytic) + std::abs(numeric));
}

double evaluate(const std::function<Tensor()>& f) {
  NoGradGuard guard;
  const double v = f().item();
  if (!std::isfinite(v)) throw DegenerateInputError("non-finite value during finite differences");
  return v;
}

// Checks coordinates of one tensor whose analytic gradient is already populated.
double check_tensor(const std::function<Tensor()>& f, Tensor& x, const Matrix& analytic, double eps,
                    std::size_t max_coords) {
  double worst = 0.0;
  const Index n = x.numel();
  const Index stride = std::max<Index>(1, static_cast<Index>((static_cast<std::size_t>(n) + max_coords - 1) /
                                                             std::max<std::size_t>(1, max_coords)));
  double* v = x.mutable_value().data();
  for (Index i = 0; i < n; i += stride) {
    const double saved = v[i];
    v[i] = saved + eps;
    const double plus = evaluate(f);
    v[i] = saved - eps;
    const double minus = evaluate(f);
    v[i] = saved;
    const double numeric = (plus - minus) / (2.0 * eps);
    const double a = analytic.size() ? analytic.data()[i] : 0.0;
    if (!std::isfinite(a)) throw DegenerateInputError("non-finite analytic gradient");
    worst = std::max(worst, relative_error(a, numeric));
  }
  return worst;
}

}  // namespace

double grad_check(const std::function<Tensor(const Tensor&)>& fn, Tensor x, double eps) {
  Tensor leaf(x.value(), true);
  Tensor out = fn(leaf);
  if (out.numel() != 1) throw ShapeError("grad_check needs a scalar function");
  if (!std::isfinite(out.item())) throw DegenerateInputError("non-finite function value");
  out.backward();
  const Matrix analytic = leaf.has_grad() ? leaf.grad() : Matrix::Zero(leaf.rows(), leaf.cols());
  return check_tensor([&] { return fn(leaf); }, leaf, analytic, eps, std::numeric_limits<std::size_t>::max());
}

GradCheckReport grad_check_params(const std::function<Tensor()>& loss, ParamStore& params, double eps,
                                  std::size_t max_coords_per_param) {
  params.zero_grad();
  Tensor out = loss();
  if (out.numel() != 1) throw ShapeError("grad_check needs a scalar function");
  out.backward();
  GradCheckReport report;
  for (auto& [name, t] : params) {
    const Matrix analytic = t.grad();
    const double err = check_tensor(loss, t, analytic, eps, max_coords_per_param);
    report.coordinates += static_cast<std::size_t>(std::min<Index>(t.numel(), static_cast<Index>(std::min<std::size_t>(
                                                                                  max_coords_per_param, 1u << 30))));
    if (err > report.max_rel_error) {
      report.max_rel_error = err;
      report.worst_parameter = name;
    }
  }
  return report;
}

}  // namespace slp::nn
