#pragma once

#include <cmath>
#include <vector>

#include "lgr2/rng.hpp"
#include "lgr2/types.hpp"

namespace lgr2 {

template <class S>
struct DenseLayer {
  MatX<S> W;  // out x in
  VecX<S> b;
};

// Fully connected net, tanh hidden activations, linear output. Batches are
// stored column-wise (one sample per column) to match Eigen's layout.
template <class S>
class Mlp {
 public:
  Mlp() = default;

  // widths = {in, hidden..., out}; Glorot-uniform init.
  Mlp(const std::vector<int>& widths, Rng& rng) {
    if (widths.size() < 2) throw ConfigError("mlp needs at least input and output widths");
    for (std::size_t l = 0; l + 1 < widths.size(); ++l) {
      const int in = widths[l], out = widths[l + 1];
      DenseLayer<S> layer;
      layer.W.resize(out, in);
      const double limit = std::sqrt(6.0 / (in + out));
      for (int r = 0; r < out; ++r)
        for (int c = 0; c < in; ++c)
          layer.W(r, c) = static_cast<S>(rng.uniform(-limit, limit));
      layer.b = VecX<S>::Zero(out);
      layers.push_back(std::move(layer));
    }
  }

  int in_dim() const { return static_cast<int>(layers.front().W.cols()); }
  int out_dim() const { return static_cast<int>(layers.back().W.rows()); }

  struct Cache {
    // acts[0] is the input; acts[l+1] the post-activation output of layer l.
    std::vector<MatX<S>> acts;
  };

  MatX<S> forward(const MatX<S>& x, Cache* cache = nullptr) const {
    if (cache) {
      cache->acts.clear();
      cache->acts.reserve(layers.size() + 1);
      cache->acts.push_back(x);
    }
    MatX<S> a = x;
    for (std::size_t l = 0; l < layers.size(); ++l) {
      MatX<S> z = (layers[l].W * a).colwise() + layers[l].b;
      if (l + 1 < layers.size()) {
        a = z.array().tanh().matrix();
      } else {
        a = std::move(z);
      }
      if (cache) cache->acts.push_back(a);
    }
    return a;
  }

  // Accumulates parameter gradients for dL/d(output) = d_out; returns
  // dL/d(input) when want_dx is set.
  MatX<S> backward(const Cache& cache, const MatX<S>& d_out,
                   std::vector<DenseLayer<S>>& grads, bool want_dx = false) const {
    MatX<S> upstream;  // dL/d(activation) of the layer below
    for (int l = static_cast<int>(layers.size()) - 1; l >= 0; --l) {
      MatX<S> dz;
      if (l + 1 < static_cast<int>(layers.size())) {
        const MatX<S>& a = cache.acts[l + 1];
        dz = (upstream.array() * (S(1) - a.array().square())).matrix();
      } else {
        dz = d_out;
      }
      grads[l].W.noalias() += dz * cache.acts[l].transpose();
      grads[l].b += dz.rowwise().sum();
      if (l > 0 || want_dx) upstream = layers[l].W.transpose() * dz;
    }
    return want_dx ? upstream : MatX<S>();
  }

  std::vector<DenseLayer<S>> layers;
};

template <class S>
std::vector<DenseLayer<S>> zero_grads(const Mlp<S>& net) {
  std::vector<DenseLayer<S>> g;
  g.reserve(net.layers.size());
  for (const auto& layer : net.layers)
    g.push_back({MatX<S>::Zero(layer.W.rows(), layer.W.cols()),
                 VecX<S>::Zero(layer.b.size())});
  return g;
}

template <class S>
int param_count(const Mlp<S>& net) {
  int n = 0;
  for (const auto& layer : net.layers)
    n += static_cast<int>(layer.W.size() + layer.b.size());
  return n;
}

template <class S>
VecX<S> flatten_params(const Mlp<S>& net) {
  VecX<S> out(param_count(net));
  int at = 0;
  for (const auto& layer : net.layers) {
    out.segment(at, layer.W.size()) =
        Eigen::Map<const VecX<S>>(layer.W.data(), layer.W.size());
    at += static_cast<int>(layer.W.size());
    out.segment(at, layer.b.size()) = layer.b;
    at += static_cast<int>(layer.b.size());
  }
  return out;
}

template <class S>
void unflatten_params(Mlp<S>& net, const VecX<S>& flat) {
  int at = 0;
  for (auto& layer : net.layers) {
    Eigen::Map<VecX<S>>(layer.W.data(), layer.W.size()) =
        flat.segment(at, layer.W.size());
    at += static_cast<int>(layer.W.size());
    layer.b = flat.segment(at, layer.b.size());
    at += static_cast<int>(layer.b.size());
  }
}

template <class S>
VecX<S> flatten_grads(const std::vector<DenseLayer<S>>& grads) {
  int n = 0;
  for (const auto& g : grads) n += static_cast<int>(g.W.size() + g.b.size());
  VecX<S> out(n);
  int at = 0;
  for (const auto& g : grads) {
    out.segment(at, g.W.size()) = Eigen::Map<const VecX<S>>(g.W.data(), g.W.size());
    at += static_cast<int>(g.W.size());
    out.segment(at, g.b.size()) = g.b;
    at += static_cast<int>(g.b.size());
  }
  return out;
}

// Adam with bias correction; moment tensors mirror the net's layers.
template <class S>
class Adam {
 public:
  Adam() = default;
  Adam(const Mlp<S>& net, S lr, S beta1 = S(0.9), S beta2 = S(0.999), S eps = S(1e-8))
      : lr_(lr), beta1_(beta1), beta2_(beta2), eps_(eps) {
    m_ = zero_grads(net);
    v_ = zero_grads(net);
  }

  void step(Mlp<S>& net, const std::vector<DenseLayer<S>>& grads) {
    ++t_;
    const S c1 = S(1) - std::pow(beta1_, static_cast<S>(t_));
    const S c2 = S(1) - std::pow(beta2_, static_cast<S>(t_));
    for (std::size_t l = 0; l < net.layers.size(); ++l) {
      auto update = [&](auto& theta, auto& m, auto& v, const auto& g) {
        m = beta1_ * m + (S(1) - beta1_) * g;
        v = (beta2_ * v.array() + (S(1) - beta2_) * g.array().square()).matrix();
        theta.array() -=
            lr_ * (m.array() / c1) / ((v.array() / c2).sqrt() + eps_);
      };
      update(net.layers[l].W, m_[l].W, v_[l].W, grads[l].W);
      update(net.layers[l].b, m_[l].b, v_[l].b, grads[l].b);
    }
  }

  long steps_taken() const { return t_; }

 private:
  S lr_ = S(1e-3), beta1_ = S(0.9), beta2_ = S(0.999), eps_ = S(1e-8);
  long t_ = 0;
  std::vector<DenseLayer<S>> m_, v_;
};

}  // namespace lgr2
