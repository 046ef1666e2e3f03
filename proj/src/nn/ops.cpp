#include "slp/nn/ops.hpp"

#include <cmath>

namespace slp::nn {

namespace {

Matrix& grad_of(Node& n) {
  if (n.grad.size() == 0) n.grad = Matrix::Zero(n.value.rows(), n.value.cols());
  return n.grad;
}

void require_same_shape(const Tensor& a, const Tensor& b, const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw ShapeError(std::string(op) + ": shapes (" + std::to_string(a.rows()) + "," + std::to_string(a.cols()) +
                     ") and (" + std::to_string(b.rows()) + "," + std::to_string(b.cols()) + ") differ");
}

}  // namespace

Tensor matmul(const Tensor& a, const Tensor& b) {
  if (a.cols() != b.rows()) throw ShapeError("matmul: inner dimensions differ");
  Matrix out;
  out.noalias() = a.value() * b.value();
  return make_op(std::move(out), {a, b}, [](Node& s) {
    Node& A = *s.parents[0];
    Node& B = *s.parents[1];
    if (A.requires_grad) grad_of(A).noalias() += s.grad * B.value.transpose();
    if (B.requires_grad) grad_of(B).noalias() += A.value.transpose() * s.grad;
  });
}

Tensor matmul_nt(const Tensor& a, const Tensor& b) {
  if (a.cols() != b.cols()) throw ShapeError("matmul_nt: inner dimensions differ");
  Matrix out;
  out.noalias() = a.value() * b.value().transpose();
  return make_op(std::move(out), {a, b}, [](Node& s) {
    Node& A = *s.parents[0];
    Node& B = *s.parents[1];
    if (A.requires_grad) grad_of(A).noalias() += s.grad * B.value;
    if (B.requires_grad) grad_of(B).noalias() += s.grad.transpose() * A.value;
  });
}

Tensor transpose(const Tensor& a) {
  return make_op(a.value().transpose(), {a}, [](Node& s) {
    Node& A = *s.parents[0];
    if (A.requires_grad) grad_of(A) += s.grad.transpose();
  });
}

Tensor add(const Tensor& a, const Tensor& b) {
  require_same_shape(a, b, "add");
  return make_op(a.value() + b.value(), {a, b}, [](Node& s) {
    for (auto& p : s.parents)
      if (p->requires_grad) grad_of(*p) += s.grad;
  });
}

Tensor sub(const Tensor& a, const Tensor& b) {
  require_same_shape(a, b, "sub");
  return make_op(a.value() - b.value(), {a, b}, [](Node& s) {
    if (s.parents[0]->requires_grad) grad_of(*s.parents[0]) += s.grad;
    if (s.parents[1]->requires_grad) grad_of(*s.parents[1]) -= s.grad;
  });
}

Tensor mul(const Tensor& a, const Tensor& b) {
  require_same_shape(a, b, "mul");
  return make_op(a.value().cwiseProduct(b.value()), {a, b}, [](Node& s) {
    Node& A = *s.parents[0];
    Node& B = *s.parents[1];
    if (A.requires_grad) grad_of(A) += s.grad.cwiseProduct(B.value);
    if (B.requires_grad) grad_of(B) += s.grad.cwiseProduct(A.value);
  });
}

Tensor scale(const Tensor& a, double k) {
  return make_op(a.value() * k, {a}, [k](Node& s) {
    if (s.parents[0]->requires_grad) grad_of(*s.parents[0]) += k * s.grad;
  });
}

Tensor add_row(const Tensor& a, const Tensor& row) {
  if (row.rows() != 1 || row.cols() != a.cols()) throw ShapeError("add_row: bias must be 1 x cols");
  Matrix out = a.value().rowwise() + row.value().row(0);
  return make_op(std::move(out), {a, row}, [](Node& s) {
    if (s.parents[0]->requires_grad) grad_of(*s.parents[0]) += s.grad;
    if (s.parents[1]->requires_grad) grad_of(*s.parents[1]) += s.grad.colwise().sum();
  });
}

Tensor add_constant(const Tensor& a, const Matrix& c) {
  if (c.rows() != a.rows() || c.cols() != a.cols()) throw ShapeError("add_constant: shapes differ");
  return make_op(a.value() + c, {a}, [](Node& s) {
    if (s.parents[0]->requires_grad) grad_of(*s.parents[0]) += s.grad;
  });
}

Tensor linear(const Tensor& x, const Tensor& weight, const Tensor& bias) {
  if (x.cols() != weight.rows()) throw ShapeError("linear: input width " + std::to_string(x.cols()) +
                                                  " does not match weight rows " + std::to_string(weight.rows()));
  if (bias.rows() != 1 || bias.cols() != weight.cols()) throw ShapeError("linear: bias shape mismatch");
  Matrix out(x.rows(), weight.cols());
  out.noalias() = x.value() * weight.value();
  out.rowwise() += bias.value().row(0);
  return make_op(std::move(out), {x, weight, bias}, [](Node& s) {
    Node& X = *s.parents[0];
    Node& W = *s.parents[1];
    Node& B = *s.parents[2];
    if (X.requires_grad) grad_of(X).noalias() += s.grad * W.value.transpose();
    if (W.requires_grad) grad_of(W).noalias() += X.value.transpose() * s.grad;
    if (B.requires_grad) grad_of(B) += s.grad.colwise().sum();
  });
}

Tensor relu(const Tensor& x) {
  return make_op(x.value().cwiseMax(0.0), {x}, [](Node& s) {
    Node& X = *s.parents[0];
    if (X.requires_grad) grad_of(X).array() += (X.value.array() > 0.0).cast<double>() * s.grad.array();
  });
}

namespace {
constexpr double kGeluC = 0.7978845608028654;  // sqrt(2/pi)
constexpr double kGeluK = 0.044715;
}  // namespace

Tensor gelu(const Tensor& x) {
  constexpr double c = kGeluC;
  constexpr double k = kGeluK;
  const auto& v = x.value().array();
  Matrix out = (0.5 * v * (1.0 + (c * (v + k * v.cube())).tanh())).matrix();
  return make_op(std::move(out), {x}, [](Node& s) {
    Node& X = *s.parents[0];
    if (!X.requires_grad) return;
    constexpr double c = kGeluC;
    constexpr double k = kGeluK;
    const auto& v = X.value.array();
    const Eigen::ArrayXXd t = (c * (v + k * v.cube())).tanh();
    const Eigen::ArrayXXd d = 0.5 * (1.0 + t) + 0.5 * v * (1.0 - t.square()) * c * (1.0 + 3.0 * k * v.square());
    grad_of(X).array() += d * s.grad.array();
  });
}

Tensor sigmoid(const Tensor& x) {
  Matrix out = (1.0 / (1.0 + (-x.value().array()).exp())).matrix();
  return make_op(std::move(out), {x}, [](Node& s) {
    Node& X = *s.parents[0];
    if (X.requires_grad) grad_of(X).array() += s.grad.array() * s.value.array() * (1.0 - s.value.array());
  });
}

Tensor softmax(const Tensor& x, int axis, const Mask* mask) {
  if (axis == 0) {
    if (mask) {
      Mask mt = mask->transpose();
      return transpose(softmax(transpose(x), 1, &mt));
    }
    return transpose(softmax(transpose(x), 1, nullptr));
  }
  if (axis != 1) throw ShapeError("softmax axis must be 0 or 1");
  if (mask && (mask->rows() != x.rows() || mask->cols() != x.cols()))
    throw ShapeError("softmax: mask shape does not match input");

  const Matrix& v = x.value();
  Matrix out = Matrix::Zero(v.rows(), v.cols());
  for (Index r = 0; r < v.rows(); ++r) {
    double m = -std::numeric_limits<double>::infinity();
    for (Index c = 0; c < v.cols(); ++c)
      if (!mask || (*mask)(r, c)) m = std::max(m, v(r, c));
    if (m == -std::numeric_limits<double>::infinity()) throw ShapeError("softmax: row has no admissible entry");
    double total = 0.0;
    for (Index c = 0; c < v.cols(); ++c) {
      if (mask && !(*mask)(r, c)) continue;
      out(r, c) = std::exp(v(r, c) - m);
      total += out(r, c);
    }
    out.row(r) /= total;
  }
  return make_op(std::move(out), {x}, [](Node& s) {
    Node& X = *s.parents[0];
    if (!X.requires_grad) return;
    const Eigen::ArrayXXd gy = s.grad.array() * s.value.array();
    const Eigen::VectorXd dot = gy.rowwise().sum().matrix();
    grad_of(X).array() += gy - s.value.array().colwise() * dot.array();
  });
}

Tensor layer_norm(const Tensor& x, const Tensor& gain, const Tensor& bias, double eps) {
  const Index n = x.cols();
  if (gain.rows() != 1 || gain.cols() != n || bias.rows() != 1 || bias.cols() != n)
    throw ShapeError("layer_norm: gain/bias must be 1 x cols");
  const Matrix& v = x.value();
  const Eigen::VectorXd mu = v.rowwise().mean();
  const Matrix centered = v.colwise() - mu;
  const Eigen::VectorXd inv =
      ((centered.array().square().rowwise().sum() / static_cast<double>(n)) + eps).rsqrt().matrix();
  Matrix xhat = centered.array().colwise() * inv.array();
  Matrix out = (xhat.array().rowwise() * gain.value().row(0).array()).matrix();
  out.rowwise() += bias.value().row(0);
  return make_op(std::move(out), {x, gain, bias}, [xhat = std::move(xhat), inv, n](Node& s) {
    Node& X = *s.parents[0];
    Node& G = *s.parents[1];
    Node& B = *s.parents[2];
    if (G.requires_grad) grad_of(G) += (s.grad.array() * xhat.array()).colwise().sum().matrix();
    if (B.requires_grad) grad_of(B) += s.grad.colwise().sum();
    if (X.requires_grad) {
      const Eigen::ArrayXXd dxhat = s.grad.array().rowwise() * G.value.row(0).array();
      const Eigen::ArrayXd sum_d = dxhat.rowwise().sum();
      const Eigen::ArrayXd sum_dx = (dxhat * xhat.array()).rowwise().sum();
      const double N = static_cast<double>(n);
      Eigen::ArrayXXd dx = (N * dxhat).colwise() - sum_d;
      dx -= xhat.array().colwise() * sum_dx;
      dx = dx.colwise() * (inv.array() / N);
      grad_of(X) += dx.matrix();
    }
  });
}

Tensor embedding(const Tensor& table, const std::vector<int>& ids) {
  Matrix out(static_cast<Index>(ids.size()), table.cols());
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (ids[i] < 0 || ids[i] >= table.rows())
      throw LookupError("embedding id " + std::to_string(ids[i]));
    out.row(static_cast<Index>(i)) = table.value().row(ids[i]);
  }
  return make_op(std::move(out), {table}, [ids](Node& s) {
    Node& T = *s.parents[0];
    if (!T.requires_grad) return;
    Matrix& g = grad_of(T);
    for (std::size_t i = 0; i < ids.size(); ++i) g.row(ids[i]) += s.grad.row(static_cast<Index>(i));
  });
}

Tensor concat_cols(const std::vector<Tensor>& parts) {
  if (parts.empty()) throw ShapeError("concat_cols of nothing");
  const Index rows = parts.front().rows();
  Index cols = 0;
  for (const auto& p : parts) {
    if (p.rows() != rows) throw ShapeError("concat_cols: row counts differ");
    cols += p.cols();
  }
  Matrix out(rows, cols);
  std::vector<Index> offsets;
  Index off = 0;
  for (const auto& p : parts) {
    offsets.push_back(off);
    out.middleCols(off, p.cols()) = p.value();
    off += p.cols();
  }
  return make_op(std::move(out), parts, [offsets](Node& s) {
    for (std::size_t i = 0; i < s.parents.size(); ++i) {
      Node& P = *s.parents[i];
      if (P.requires_grad) grad_of(P) += s.grad.middleCols(offsets[i], P.value.cols());
    }
  });
}

Tensor slice_cols(const Tensor& x, Index start, Index count) {
  if (start < 0 || count < 0 || start + count > x.cols()) throw ShapeError("slice_cols out of range");
  return make_op(x.value().middleCols(start, count), {x}, [start, count](Node& s) {
    Node& X = *s.parents[0];
    if (X.requires_grad) grad_of(X).middleCols(start, count) += s.grad;
  });
}

Tensor sum(const Tensor& x) {
  return make_op(Matrix::Constant(1, 1, x.value().sum()), {x}, [](Node& s) {
    Node& X = *s.parents[0];
    if (X.requires_grad) grad_of(X).array() += s.grad(0, 0);
  });
}

Tensor mean(const Tensor& x) {
  const double n = static_cast<double>(x.numel());
  return make_op(Matrix::Constant(1, 1, x.value().sum() / n), {x}, [n](Node& s) {
    Node& X = *s.parents[0];
    if (X.requires_grad) grad_of(X).array() += s.grad(0, 0) / n;
  });
}

Tensor dropout(const Tensor& x, double rate, Rng* rng) {
  if (rate <= 0.0 || rng == nullptr) return x;
  if (rate >= 1.0) throw ShapeError("dropout rate must be below 1");
  Matrix keep(x.rows(), x.cols());
  for (Index i = 0; i < keep.size(); ++i) keep.data()[i] = rng->bernoulli(1.0 - rate) ? 1.0 / (1.0 - rate) : 0.0;
  Matrix out = x.value().cwiseProduct(keep);
  return make_op(std::move(out), {x}, [keep = std::move(keep)](Node& s) {
    Node& X = *s.parents[0];
    if (X.requires_grad) grad_of(X) += s.grad.cwiseProduct(keep);
  });
}

Tensor cross_entropy(const Tensor& logits, const std::vector<int>& targets, int ignore_index) {
  const Index n = logits.rows(), V = logits.cols();
  if (static_cast<Index>(targets.size()) != n) throw ShapeError("cross_entropy: one target per row expected");
  const Matrix& z = logits.value();
  Matrix probs(n, V);
  double loss = 0.0;
  int count = 0;
  for (Index r = 0; r < n; ++r) {
    const int t = targets[static_cast<std::size_t>(r)];
    if (t == ignore_index) continue;
    if (t < 0 || t >= V) throw ShapeError("cross_entropy: target " + std::to_string(t) + " out of range");
    const double m = z.row(r).maxCoeff();
    const Eigen::RowVectorXd e = (z.row(r).array() - m).exp().matrix();
    const double total = e.sum();
    probs.row(r) = e / total;
    loss += std::log(total) + m - z(r, t);
    ++count;
  }
  if (count == 0) throw ShapeError("cross_entropy: no supervised positions");
  loss /= count;
  return make_op(Matrix::Constant(1, 1, loss), {logits},
                 [probs = std::move(probs), targets, ignore_index, count](Node& s) {
                   Node& L = *s.parents[0];
                   if (!L.requires_grad) return;
                   Matrix& g = grad_of(L);
                   const double k = s.grad(0, 0) / count;
                   for (Index r = 0; r < probs.rows(); ++r) {
                     const int t = targets[static_cast<std::size_t>(r)];
                     if (t == ignore_index) continue;
                     g.row(r) += k * probs.row(r);
                     g(r, t) -= k;
                   }
                 });
}

Tensor binary_cross_entropy(const Tensor& probs, const std::vector<double>& targets, double eps) {
  const Index Q = probs.numel();
  if (probs.rows() != 1 && probs.cols() != 1) throw ShapeError("binary_cross_entropy: probs must be a vector");
  if (static_cast<Index>(targets.size()) != Q)
    throw ShapeError("binary_cross_entropy: " + std::to_string(targets.size()) + " targets for " +
                     std::to_string(Q) + " probabilities");
  if (Q == 0) throw ShapeError("binary_cross_entropy: empty input");
  const double* p = probs.value().data();
  double loss = 0.0;
  for (Index q = 0; q < Q; ++q) {
    const double pc = std::clamp(p[q], eps, 1.0 - eps);
    const double t = targets[static_cast<std::size_t>(q)];
    loss -= t * std::log(pc) + (1.0 - t) * std::log(1.0 - pc);
  }
  loss /= static_cast<double>(Q);
  return make_op(Matrix::Constant(1, 1, loss), {probs}, [targets, eps](Node& s) {
    Node& P = *s.parents[0];
    if (!P.requires_grad) return;
    Matrix& g = grad_of(P);
    const double Qd = static_cast<double>(P.value.size());
    const double k = s.grad(0, 0) / Qd;
    for (Index q = 0; q < P.value.size(); ++q) {
      const double pv = P.value.data()[q];
      if (pv <= eps || pv >= 1.0 - eps) continue;  // clamped: flat
      const double t = targets[static_cast<std::size_t>(q)];
      g.data()[q] += -k * (t / pv - (1.0 - t) / (1.0 - pv));
    }
  });
}

Matrix sinusoidal_encoding(Index len, Index dim) {
  Matrix pe(len, dim);
  for (Index pos = 0; pos < len; ++pos) {
    for (Index i = 0; i < dim; ++i) {
      const double rate = std::pow(10000.0, -static_cast<double>(2 * (i / 2)) / static_cast<double>(dim));
      const double angle = static_cast<double>(pos) * rate;
      pe(pos, i) = (i % 2 == 0) ? std::sin(angle) : std::cos(angle);
    }
  }
  return pe;
}

}  // namespace slp::nn
