// Copyright 2026 The VisionNet Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "visionnet/autograd.hpp"

#include <cblas.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_set>
#include <utility>

namespace visionnet
{

Tensor & Node::grad_buffer()
{
  if (grad.empty()) {
    grad = Tensor(value.shape(), 0.0);
  }
  return grad;
}

namespace
{

Var make_result(
  Tensor value, std::vector<std::shared_ptr<Node>> parents, std::function<void(Node &)> fn)
{
  auto node = std::make_shared<Node>();
  node->value = std::move(value);
  bool needs = false;
  for (const auto & p : parents) {
    needs = needs || p->requires_grad;
  }
  if (needs) {
    node->requires_grad = true;
    node->parents = std::move(parents);
    node->backward_fn = std::move(fn);
  }
  return Var(std::move(node));
}

void check_binary(const Var & a, const Var & b, const char * op)
{
  if (a.shape() != b.shape() && a.size() != 1 && b.size() != 1) {
    throw std::invalid_argument(
      std::string(op) + ": shape mismatch " + shape_str(a.shape()) + " vs " +
      shape_str(b.shape()));
  }
}

// Reduces an elementwise gradient onto an operand that may have been broadcast.
void accumulate_broadcast(Node & target, const std::vector<double> & g)
{
  if (!target.requires_grad) {
    return;
  }
  Tensor & tg = target.grad_buffer();
  if (tg.size() == g.size()) {
    for (std::size_t i = 0; i < g.size(); ++i) {
      tg[i] += g[i];
    }
  } else {
    double s = 0.0;
    for (double v : g) {
      s += v;
    }
    tg[0] += s;
  }
}

template <typename Fwd, typename Bwd>
Var binary_op(const Var & a, const Var & b, const char * name, Fwd fwd, Bwd bwd)
{
  check_binary(a, b, name);
  const Tensor & av = a.value();
  const Tensor & bv = b.value();
  const bool a_big = av.size() >= bv.size();
  Tensor out(a_big ? av.shape() : bv.shape());
  const std::size_t n = out.size();
  const std::size_t sa = av.size() == 1 ? 0 : 1;
  const std::size_t sb = bv.size() == 1 ? 0 : 1;
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = fwd(av[i * sa], bv[i * sb]);
  }
  return make_result(std::move(out), {a.node(), b.node()}, [sa, sb, bwd](Node & self) {
    Node & pa = *self.parents[0];
    Node & pb = *self.parents[1];
    const std::size_t n = self.value.size();
    std::vector<double> ga(pa.requires_grad ? n : 0);
    std::vector<double> gb(pb.requires_grad ? n : 0);
    for (std::size_t i = 0; i < n; ++i) {
      double da = 0.0;
      double db = 0.0;
      bwd(pa.value[i * sa], pb.value[i * sb], self.value[i], self.grad[i], da, db);
      if (!ga.empty()) {
        ga[i] = da;
      }
      if (!gb.empty()) {
        gb[i] = db;
      }
    }
    accumulate_broadcast(pa, ga);
    accumulate_broadcast(pb, gb);
  });
}

template <typename Fwd, typename Bwd>
Var unary_op(const Var & a, Fwd fwd, Bwd bwd)
{
  const Tensor & av = a.value();
  Tensor out(av.shape());
  for (std::size_t i = 0; i < av.size(); ++i) {
    out[i] = fwd(av[i]);
  }
  return make_result(std::move(out), {a.node()}, [bwd](Node & self) {
    Node & p = *self.parents[0];
    Tensor & g = p.grad_buffer();
    for (std::size_t i = 0; i < g.size(); ++i) {
      g[i] += bwd(p.value[i], self.value[i]) * self.grad[i];
    }
  });
}

double stable_sigmoid(double x)
{
  if (x >= 0.0) {
    return 1.0 / (1.0 + std::exp(-x));
  }
  const double e = std::exp(x);
  return e / (1.0 + e);
}

void gemm(bool trans_a, bool trans_b, std::size_t m, std::size_t n, std::size_t k,
          const double * a, const double * b, double beta, double * c)
{
  cblas_dgemm(
    CblasRowMajor, trans_a ? CblasTrans : CblasNoTrans, trans_b ? CblasTrans : CblasNoTrans,
    static_cast<int>(m), static_cast<int>(n), static_cast<int>(k), 1.0, a,
    static_cast<int>(trans_a ? m : k), b, static_cast<int>(trans_b ? k : n), beta, c,
    static_cast<int>(n));
}

struct ConvGeometry
{
  std::size_t channels, height, width, kernel, stride, padding, out_h, out_w;

  std::size_t col_rows() const { return channels * kernel * kernel; }
  std::size_t col_cols() const { return out_h * out_w; }
};

// Output columns [lo, hi) whose input column ow * stride + k - pad is inside [0, size).
inline void valid_range(std::size_t k, std::size_t stride, std::size_t pad, std::size_t size,
                        std::size_t out, std::size_t & lo, std::size_t & hi)
{
  const auto sk = static_cast<std::ptrdiff_t>(k) - static_cast<std::ptrdiff_t>(pad);
  const auto s = static_cast<std::ptrdiff_t>(stride);
  // smallest ow with ow * s + sk >= 0
  std::ptrdiff_t l = sk >= 0 ? 0 : (-sk + s - 1) / s;
  // smallest ow with ow * s + sk >= size
  std::ptrdiff_t h = (static_cast<std::ptrdiff_t>(size) - sk + s - 1) / s;
  l = std::clamp<std::ptrdiff_t>(l, 0, static_cast<std::ptrdiff_t>(out));
  h = std::clamp<std::ptrdiff_t>(h, l, static_cast<std::ptrdiff_t>(out));
  lo = static_cast<std::size_t>(l);
  hi = static_cast<std::size_t>(h);
}

// image [C, H, W] -> col [C*K*K, OH*OW]
void im2col(const ConvGeometry & g, const double * image, double * col)
{
  for (std::size_t c = 0; c < g.channels; ++c) {
    for (std::size_t kh = 0; kh < g.kernel; ++kh) {
      std::size_t oh_lo, oh_hi;
      valid_range(kh, g.stride, g.padding, g.height, g.out_h, oh_lo, oh_hi);
      for (std::size_t kw = 0; kw < g.kernel; ++kw) {
        std::size_t ow_lo, ow_hi;
        valid_range(kw, g.stride, g.padding, g.width, g.out_w, ow_lo, ow_hi);
        double * row = col + ((c * g.kernel + kh) * g.kernel + kw) * g.col_cols();
        std::fill(row, row + oh_lo * g.out_w, 0.0);
        for (std::size_t oh = oh_lo; oh < oh_hi; ++oh) {
          const std::size_t ih = oh * g.stride + kh - g.padding;
          double * dst = row + oh * g.out_w;
          const double * src = image + (c * g.height + ih) * g.width;
          std::fill(dst, dst + ow_lo, 0.0);
          if (g.stride == 1) {
            const std::size_t iw_lo = ow_lo + kw - g.padding;
            std::copy(src + iw_lo, src + iw_lo + (ow_hi - ow_lo), dst + ow_lo);
          } else {
            for (std::size_t ow = ow_lo; ow < ow_hi; ++ow) {
              dst[ow] = src[ow * g.stride + kw - g.padding];
            }
          }
          std::fill(dst + ow_hi, dst + g.out_w, 0.0);
        }
        std::fill(row + oh_hi * g.out_w, row + g.col_cols(), 0.0);
      }
    }
  }
}

// col [C*K*K, OH*OW] accumulated into image [C, H, W]
void col2im(const ConvGeometry & g, const double * col, double * image)
{
  for (std::size_t c = 0; c < g.channels; ++c) {
    for (std::size_t kh = 0; kh < g.kernel; ++kh) {
      std::size_t oh_lo, oh_hi;
      valid_range(kh, g.stride, g.padding, g.height, g.out_h, oh_lo, oh_hi);
      for (std::size_t kw = 0; kw < g.kernel; ++kw) {
        std::size_t ow_lo, ow_hi;
        valid_range(kw, g.stride, g.padding, g.width, g.out_w, ow_lo, ow_hi);
        const double * row = col + ((c * g.kernel + kh) * g.kernel + kw) * g.col_cols();
        for (std::size_t oh = oh_lo; oh < oh_hi; ++oh) {
          const std::size_t ih = oh * g.stride + kh - g.padding;
          double * dst = image + (c * g.height + ih) * g.width;
          const double * src = row + oh * g.out_w;
          if (g.stride == 1) {
            double * out = dst + ow_lo + kw - g.padding;
            for (std::size_t ow = ow_lo; ow < ow_hi; ++ow) {
              out[ow - ow_lo] += src[ow];
            }
          } else {
            for (std::size_t ow = ow_lo; ow < ow_hi; ++ow) {
              dst[ow * g.stride + kw - g.padding] += src[ow];
            }
          }
        }
      }
    }
  }
}

// Scratch buffer without zero-initialization; im2col and beta = 0 GEMMs overwrite it.
struct Scratch
{
  explicit Scratch(std::size_t n) : data(new double[n]) {}
  std::unique_ptr<double[]> data;
  double * get() { return data.get(); }
};

void require_rank4(const Var & v, const char * op, const char * what)
{
  if (v.shape().size() != 4) {
    throw std::invalid_argument(
      std::string(op) + ": " + what + " must be rank 4, got " + shape_str(v.shape()));
  }
}

void check_bias(const Var & bias, std::size_t channels, const char * op)
{
  if (bias.shape().size() != 1 || bias.shape()[0] != channels) {
    throw std::invalid_argument(
      std::string(op) + ": bias shape " + shape_str(bias.shape()) + " does not match " +
      std::to_string(channels) + " output channels");
  }
}

}  // namespace

Var constant(Tensor value)
{
  auto node = std::make_shared<Node>();
  node->value = std::move(value);
  return Var(std::move(node));
}

Var leaf(Tensor value)
{
  auto node = std::make_shared<Node>();
  node->value = std::move(value);
  node->requires_grad = true;
  return Var(std::move(node));
}

void backward(const Var & loss)
{
  if (!loss) {
    throw std::invalid_argument("backward: empty variable");
  }
  if (loss.size() != 1) {
    throw std::invalid_argument("backward: loss must be scalar, got " + shape_str(loss.shape()));
  }
  Node * root = loss.node().get();
  if (root->backward_done) {
    throw std::logic_error("backward: graph already differentiated");
  }
  if (!root->requires_grad) {
    throw std::invalid_argument("backward: loss does not depend on any parameter");
  }

  // Iterative post-order DFS gives a topological order.
  std::vector<Node *> order;
  std::unordered_set<Node *> visited;
  std::vector<std::pair<Node *, std::size_t>> stack{{root, 0}};
  visited.insert(root);
  while (!stack.empty()) {
    auto & [node, next] = stack.back();
    if (next < node->parents.size()) {
      Node * p = node->parents[next++].get();
      if (p->requires_grad && visited.insert(p).second) {
        stack.emplace_back(p, 0);
      }
    } else {
      order.push_back(node);
      stack.pop_back();
    }
  }

  root->grad_buffer()[0] += 1.0;
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    Node * node = *it;
    if (node->backward_fn && node->has_grad()) {
      node->backward_fn(*node);
      if (node != root) {
        node->grad = Tensor();
      }
    }
  }
  root->backward_done = true;
}

Var add(const Var & a, const Var & b)
{
  return binary_op(
    a, b, "add", [](double x, double y) { return x + y; },
    [](double, double, double, double g, double & da, double & db) {
      da = g;
      db = g;
    });
}

Var sub(const Var & a, const Var & b)
{
  return binary_op(
    a, b, "sub", [](double x, double y) { return x - y; },
    [](double, double, double, double g, double & da, double & db) {
      da = g;
      db = -g;
    });
}

Var mul(const Var & a, const Var & b)
{
  return binary_op(
    a, b, "mul", [](double x, double y) { return x * y; },
    [](double x, double y, double, double g, double & da, double & db) {
      da = g * y;
      db = g * x;
    });
}

Var pow(const Var & base, const Var & exponent)
{
  for (double v : base.value().values()) {
    if (v < 0.0 || std::isnan(v)) {
      throw std::domain_error("pow: negative base");
    }
  }
  return binary_op(
    base, exponent, "pow", [](double b, double e) { return std::pow(b, e); },
    [](double b, double e, double out, double g, double & db, double & de) {
      if (b > 0.0) {
        db = g * e * std::pow(b, e - 1.0);
        de = g * out * std::log(b);
      } else {
        db = e == 1.0 ? g : 0.0;
        de = 0.0;
      }
    });
}

Var scale(const Var & a, double s)
{
  return unary_op(a, [s](double x) { return s * x; }, [s](double, double) { return s; });
}

Var add_scalar(const Var & a, double s)
{
  return unary_op(a, [s](double x) { return x + s; }, [](double, double) { return 1.0; });
}

Var one_minus(const Var & a)
{
  return unary_op(a, [](double x) { return 1.0 - x; }, [](double, double) { return -1.0; });
}

Var relu(const Var & a)
{
  return unary_op(
    a, [](double x) { return x > 0.0 ? x : 0.0; },
    [](double x, double) { return x > 0.0 ? 1.0 : 0.0; });
}

Var sigmoid(const Var & a)
{
  return unary_op(a, stable_sigmoid, [](double, double y) { return y * (1.0 - y); });
}

Var softplus(const Var & a)
{
  return unary_op(
    a,
    [](double x) { return x > 0.0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x)); },
    [](double x, double) { return stable_sigmoid(x); });
}

Var abs(const Var & a)
{
  return unary_op(
    a, [](double x) { return std::abs(x); },
    [](double x, double) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); });
}

Var square(const Var & a)
{
  return unary_op(a, [](double x) { return x * x; }, [](double x, double) { return 2.0 * x; });
}

Var sum(const Var & a)
{
  double s = 0.0;
  for (double v : a.value().values()) {
    s += v;
  }
  return make_result(Tensor::scalar(s), {a.node()}, [](Node & self) {
    Tensor & g = self.parents[0]->grad_buffer();
    const double go = self.grad[0];
    for (std::size_t i = 0; i < g.size(); ++i) {
      g[i] += go;
    }
  });
}

Var mean(const Var & a) { return scale(sum(a), 1.0 / static_cast<double>(a.size())); }

Var reshape(const Var & a, Shape shape)
{
  Tensor out = a.value().reshaped(std::move(shape));
  return make_result(std::move(out), {a.node()}, [](Node & self) {
    Tensor & g = self.parents[0]->grad_buffer();
    for (std::size_t i = 0; i < g.size(); ++i) {
      g[i] += self.grad[i];
    }
  });
}

Var concat_channels(const Var & a, const Var & b)
{
  require_rank4(a, "concat_channels", "first input");
  require_rank4(b, "concat_channels", "second input");
  const Shape & sa = a.shape();
  const Shape & sb = b.shape();
  if (sa[0] != sb[0] || sa[2] != sb[2] || sa[3] != sb[3]) {
    throw std::invalid_argument(
      "concat_channels: shape mismatch " + shape_str(sa) + " vs " + shape_str(sb));
  }
  const std::size_t n = sa[0];
  const std::size_t plane = sa[2] * sa[3];
  const std::size_t ca = sa[1] * plane;
  const std::size_t cb = sb[1] * plane;
  Tensor out({n, sa[1] + sb[1], sa[2], sa[3]});
  for (std::size_t i = 0; i < n; ++i) {
    std::copy_n(a.value().data() + i * ca, ca, out.data() + i * (ca + cb));
    std::copy_n(b.value().data() + i * cb, cb, out.data() + i * (ca + cb) + ca);
  }
  return make_result(std::move(out), {a.node(), b.node()}, [n, ca, cb](Node & self) {
    for (std::size_t k = 0; k < 2; ++k) {
      Node & p = *self.parents[k];
      if (!p.requires_grad) {
        continue;
      }
      const std::size_t len = k == 0 ? ca : cb;
      const std::size_t off = k == 0 ? 0 : ca;
      Tensor & g = p.grad_buffer();
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < len; ++j) {
          g[i * len + j] += self.grad[i * (ca + cb) + off + j];
        }
      }
    }
  });
}

Var maxpool_set(std::span<const Var> inputs)
{
  if (inputs.empty()) {
    throw std::invalid_argument("maxpool_set: empty input set");
  }
  const Shape & shape = inputs[0].shape();
  for (const auto & v : inputs) {
    if (v.shape() != shape) {
      throw std::invalid_argument(
        "maxpool_set: shape mismatch " + shape_str(shape) + " vs " + shape_str(v.shape()));
    }
  }
  Tensor out = inputs[0].value();
  std::vector<std::uint32_t> argmax(out.size(), 0);
  for (std::size_t k = 1; k < inputs.size(); ++k) {
    const Tensor & v = inputs[k].value();
    for (std::size_t i = 0; i < out.size(); ++i) {
      if (v[i] > out[i]) {
        out[i] = v[i];
        argmax[i] = static_cast<std::uint32_t>(k);
      }
    }
  }
  std::vector<std::shared_ptr<Node>> parents;
  parents.reserve(inputs.size());
  for (const auto & v : inputs) {
    parents.push_back(v.node());
  }
  return make_result(std::move(out), std::move(parents), [argmax = std::move(argmax)](Node & self) {
    for (std::size_t i = 0; i < argmax.size(); ++i) {
      Node & p = *self.parents[argmax[i]];
      if (p.requires_grad) {
        p.grad_buffer()[i] += self.grad[i];
      }
    }
  });
}

std::size_t conv_out_size(std::size_t in, std::size_t kernel, std::size_t stride,
                          std::size_t padding)
{
  if (stride == 0 || kernel == 0) {
    throw std::invalid_argument("conv: kernel and stride must be >= 1");
  }
  if (in + 2 * padding < kernel) {
    throw std::invalid_argument(
      "conv: kernel " + std::to_string(kernel) + " larger than padded input " +
      std::to_string(in + 2 * padding));
  }
  return (in + 2 * padding - kernel) / stride + 1;
}

Var conv2d(const Var & input, const Var & weight, const Var & bias, std::size_t stride,
           std::size_t padding)
{
  require_rank4(input, "conv2d", "input");
  require_rank4(weight, "conv2d", "weight");
  const Shape & xs = input.shape();
  const Shape & ws = weight.shape();
  if (ws[1] != xs[1] || ws[2] != ws[3]) {
    throw std::invalid_argument(
      "conv2d: input " + shape_str(xs) + " incompatible with weight " + shape_str(ws));
  }
  check_bias(bias, ws[0], "conv2d");
  const std::size_t n = xs[0];
  const std::size_t out_c = ws[0];
  ConvGeometry g{xs[1], xs[2], xs[3], ws[2], stride, padding,
                 conv_out_size(xs[2], ws[2], stride, padding),
                 conv_out_size(xs[3], ws[2], stride, padding)};
  Tensor out({n, out_c, g.out_h, g.out_w});
  Scratch col(g.col_rows() * g.col_cols());
  const std::size_t in_stride = g.channels * g.height * g.width;
  const std::size_t out_stride = out_c * g.col_cols();
  for (std::size_t i = 0; i < n; ++i) {
    im2col(g, input.value().data() + i * in_stride, col.get());
    double * o = out.data() + i * out_stride;
    gemm(false, false, out_c, g.col_cols(), g.col_rows(), weight.value().data(), col.get(), 0.0, o);
    for (std::size_t c = 0; c < out_c; ++c) {
      const double b = bias.value()[c];
      for (std::size_t p = 0; p < g.col_cols(); ++p) {
        o[c * g.col_cols() + p] += b;
      }
    }
  }
  return make_result(
    std::move(out), {input.node(), weight.node(), bias.node()},
    [g, n, out_c, in_stride, out_stride](Node & self) {
      Node & x = *self.parents[0];
      Node & w = *self.parents[1];
      Node & b = *self.parents[2];
      Scratch col(g.col_rows() * g.col_cols());
      for (std::size_t i = 0; i < n; ++i) {
        const double * go = self.grad.data() + i * out_stride;
        if (w.requires_grad) {
          im2col(g, x.value.data() + i * in_stride, col.get());
          gemm(false, true, out_c, g.col_rows(), g.col_cols(), go, col.get(), 1.0,
               w.grad_buffer().data());
        }
        if (b.requires_grad) {
          Tensor & gb = b.grad_buffer();
          for (std::size_t c = 0; c < out_c; ++c) {
            double s = 0.0;
            for (std::size_t p = 0; p < g.col_cols(); ++p) {
              s += go[c * g.col_cols() + p];
            }
            gb[c] += s;
          }
        }
        if (x.requires_grad) {
          gemm(true, false, g.col_rows(), g.col_cols(), out_c, w.value.data(), go, 0.0, col.get());
          col2im(g, col.get(), x.grad_buffer().data() + i * in_stride);
        }
      }
    });
}

Var deconv2d(const Var & input, const Var & weight, const Var & bias, std::size_t stride,
             std::size_t padding)
{
  require_rank4(input, "deconv2d", "input");
  require_rank4(weight, "deconv2d", "weight");
  const Shape & xs = input.shape();
  const Shape & ws = weight.shape();
  if (ws[0] != xs[1] || ws[2] != ws[3]) {
    throw std::invalid_argument(
      "deconv2d: input " + shape_str(xs) + " incompatible with weight " + shape_str(ws));
  }
  check_bias(bias, ws[1], "deconv2d");
  if (stride == 0) {
    throw std::invalid_argument("deconv2d: stride must be >= 1");
  }
  const std::size_t n = xs[0];
  const std::size_t in_c = xs[1];
  const std::size_t out_c = ws[1];
  const std::size_t k = ws[2];
  const std::size_t full_h = (xs[2] - 1) * stride + k;
  const std::size_t full_w = (xs[3] - 1) * stride + k;
  if (full_h <= 2 * padding || full_w <= 2 * padding) {
    throw std::invalid_argument("deconv2d: padding too large for input " + shape_str(xs));
  }
  // Geometry of the adjoint convolution: image = output, columns = input positions.
  ConvGeometry g{out_c, full_h - 2 * padding, full_w - 2 * padding, k, stride, padding,
                 xs[2], xs[3]};
  Tensor out({n, out_c, g.height, g.width});
  Scratch col(g.col_rows() * g.col_cols());
  const std::size_t in_stride = in_c * g.col_cols();
  const std::size_t out_stride = out_c * g.height * g.width;
  const std::size_t plane = g.height * g.width;
  for (std::size_t i = 0; i < n; ++i) {
    gemm(true, false, g.col_rows(), g.col_cols(), in_c, weight.value().data(),
         input.value().data() + i * in_stride, 0.0, col.get());
    double * o = out.data() + i * out_stride;
    col2im(g, col.get(), o);
    for (std::size_t c = 0; c < out_c; ++c) {
      const double b = bias.value()[c];
      for (std::size_t p = 0; p < plane; ++p) {
        o[c * plane + p] += b;
      }
    }
  }
  return make_result(
    std::move(out), {input.node(), weight.node(), bias.node()},
    [g, n, in_c, out_c, in_stride, out_stride, plane](Node & self) {
      Node & x = *self.parents[0];
      Node & w = *self.parents[1];
      Node & b = *self.parents[2];
      Scratch col(g.col_rows() * g.col_cols());
      for (std::size_t i = 0; i < n; ++i) {
        const double * go = self.grad.data() + i * out_stride;
        if (b.requires_grad) {
          Tensor & gb = b.grad_buffer();
          for (std::size_t c = 0; c < out_c; ++c) {
            double s = 0.0;
            for (std::size_t p = 0; p < plane; ++p) {
              s += go[c * plane + p];
            }
            gb[c] += s;
          }
        }
        if (!x.requires_grad && !w.requires_grad) {
          continue;
        }
        im2col(g, go, col.get());
        if (x.requires_grad) {
          gemm(false, false, in_c, g.col_cols(), g.col_rows(), w.value.data(), col.get(), 1.0,
               x.grad_buffer().data() + i * in_stride);
        }
        if (w.requires_grad) {
          gemm(false, true, in_c, g.col_rows(), g.col_cols(), x.value.data() + i * in_stride,
               col.get(), 1.0, w.grad_buffer().data());
        }
      }
    });
}

Var depthwise_conv2d(const Var & input, const Var & weight, const Var & bias,
                     std::size_t stride, std::size_t padding)
{
  require_rank4(input, "depthwise_conv2d", "input");
  require_rank4(weight, "depthwise_conv2d", "weight");
  const Shape & xs = input.shape();
  const Shape & ws = weight.shape();
  if (ws[0] != xs[1] || ws[1] != 1 || ws[2] != ws[3]) {
    throw std::invalid_argument(
      "depthwise_conv2d: input " + shape_str(xs) + " incompatible with weight " + shape_str(ws));
  }
  check_bias(bias, ws[0], "depthwise_conv2d");
  const std::size_t n = xs[0];
  const std::size_t ch = xs[1];
  ConvGeometry g{1, xs[2], xs[3], ws[2], stride, padding,
                 conv_out_size(xs[2], ws[2], stride, padding),
                 conv_out_size(xs[3], ws[2], stride, padding)};
  const std::size_t kk = g.kernel * g.kernel;
  const std::size_t in_plane = g.height * g.width;
  const std::size_t out_plane = g.col_cols();
  Tensor out({n, ch, g.out_h, g.out_w});
  Scratch col(kk * out_plane);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t c = 0; c < ch; ++c) {
      im2col(g, input.value().data() + (i * ch + c) * in_plane, col.get());
      double * o = out.data() + (i * ch + c) * out_plane;
      const double * wk = weight.value().data() + c * kk;
      std::fill(o, o + out_plane, bias.value()[c]);
      for (std::size_t q = 0; q < kk; ++q) {
        const double wq = wk[q];
        const double * row = col.get() + q * out_plane;
        for (std::size_t p = 0; p < out_plane; ++p) {
          o[p] += wq * row[p];
        }
      }
    }
  }
  return make_result(
    std::move(out), {input.node(), weight.node(), bias.node()},
    [g, n, ch, kk, in_plane, out_plane](Node & self) {
      Node & x = *self.parents[0];
      Node & w = *self.parents[1];
      Node & b = *self.parents[2];
      Scratch col(kk * out_plane);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t c = 0; c < ch; ++c) {
          const double * go = self.grad.data() + (i * ch + c) * out_plane;
          if (b.requires_grad) {
            double s = 0.0;
            for (std::size_t p = 0; p < out_plane; ++p) {
              s += go[p];
            }
            b.grad_buffer()[c] += s;
          }
          if (w.requires_grad) {
            im2col(g, x.value.data() + (i * ch + c) * in_plane, col.get());
            double * gw = w.grad_buffer().data() + c * kk;
            for (std::size_t q = 0; q < kk; ++q) {
              double s = 0.0;
              const double * row = col.get() + q * out_plane;
              for (std::size_t p = 0; p < out_plane; ++p) {
                s += row[p] * go[p];
              }
              gw[q] += s;
            }
          }
          if (x.requires_grad) {
            const double * wk = w.value.data() + c * kk;
            for (std::size_t q = 0; q < kk; ++q) {
              double * row = col.get() + q * out_plane;
              for (std::size_t p = 0; p < out_plane; ++p) {
                row[p] = wk[q] * go[p];
              }
            }
            col2im(g, col.get(), x.grad_buffer().data() + (i * ch + c) * in_plane);
          }
        }
      }
    });
}

Var fc(const Var & input, const Var & weight, const Var & bias)
{
  const Shape & xs = input.shape();
  const Shape & ws = weight.shape();
  if (ws.size() != 2) {
    throw std::invalid_argument("fc: weight must be rank 2, got " + shape_str(ws));
  }
  const std::size_t n = xs[0];
  const std::size_t in = input.size() / n;
  if (ws[1] != in) {
    throw std::invalid_argument(
      "fc: input " + shape_str(xs) + " incompatible with weight " + shape_str(ws));
  }
  const std::size_t out_dim = ws[0];
  check_bias(bias, out_dim, "fc");
  Tensor out({n, out_dim});
  for (std::size_t i = 0; i < n; ++i) {
    std::copy_n(bias.value().data(), out_dim, out.data() + i * out_dim);
  }
  gemm(false, true, n, out_dim, in, input.value().data(), weight.value().data(), 1.0, out.data());
  return make_result(
    std::move(out), {input.node(), weight.node(), bias.node()}, [n, in, out_dim](Node & self) {
      Node & x = *self.parents[0];
      Node & w = *self.parents[1];
      Node & b = *self.parents[2];
      if (x.requires_grad) {
        gemm(false, false, n, in, out_dim, self.grad.data(), w.value.data(), 1.0,
             x.grad_buffer().data());
      }
      if (w.requires_grad) {
        gemm(true, false, out_dim, in, n, self.grad.data(), x.value.data(), 1.0,
             w.grad_buffer().data());
      }
      if (b.requires_grad) {
        Tensor & gb = b.grad_buffer();
        for (std::size_t i = 0; i < n; ++i) {
          for (std::size_t o = 0; o < out_dim; ++o) {
            gb[o] += self.grad[i * out_dim + o];
          }
        }
      }
    });
}

}  // namespace visionnet
