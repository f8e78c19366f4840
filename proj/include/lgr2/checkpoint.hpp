#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lgr2/sac.hpp"
#include "lgr2/types.hpp"

namespace lgr2 {

// Versioned binary blob of named double tensors. Values are stored as
// float64 regardless of the training scalar, so checkpoints are portable
// between instantiations.
struct Checkpoint {
  static constexpr std::uint32_t kVersion = 1;
  std::string env;
  std::vector<std::pair<std::string, Mat>> tensors;

  void put(const std::string& name, Mat value);
  const Mat& get(const std::string& name) const;  // LoadError if absent
  bool has(const std::string& name) const;
};

void save_checkpoint(const std::string& path, const Checkpoint& ck);
Checkpoint load_checkpoint(const std::string& path);

namespace detail {

template <class S>
Mat to_mat(const MatX<S>& m) {
  return m.template cast<double>();
}

template <class S>
void assign_checked(MatX<S>& dst, const Mat& src, const std::string& name) {
  if (dst.rows() != src.rows() || dst.cols() != src.cols())
    throw LoadError("checkpoint tensor '" + name + "' has shape " +
                    std::to_string(src.rows()) + "x" + std::to_string(src.cols()) +
                    ", expected " + std::to_string(dst.rows()) + "x" +
                    std::to_string(dst.cols()));
  dst = src.cast<S>();
}

}  // namespace detail

template <class S>
void pack_agent(Checkpoint& ck, const std::string& prefix, const SacAgent<S>& agent) {
  auto pack_net = [&](const std::string& net_name, const Mlp<S>& net) {
    for (std::size_t l = 0; l < net.layers.size(); ++l) {
      const std::string base = prefix + "." + net_name + "." + std::to_string(l);
      ck.put(base + ".W", detail::to_mat(MatX<S>(net.layers[l].W)));
      ck.put(base + ".b", detail::to_mat(MatX<S>(net.layers[l].b)));
    }
  };
  pack_net("actor", agent.actor);
  pack_net("critic1", agent.critic1);
  pack_net("critic2", agent.critic2);
  pack_net("target1", agent.target1);
  pack_net("target2", agent.target2);
  Mat count(1, 1);
  count(0, 0) = agent.obs_norm.count();
  ck.put(prefix + ".norm.count", count);
  ck.put(prefix + ".norm.mean", detail::to_mat(MatX<S>(agent.obs_norm.mean())));
  ck.put(prefix + ".norm.m2", detail::to_mat(MatX<S>(agent.obs_norm.m2())));
}

template <class S>
void unpack_agent(const Checkpoint& ck, const std::string& prefix, SacAgent<S>& agent) {
  auto unpack_net = [&](const std::string& net_name, Mlp<S>& net) {
    for (std::size_t l = 0; l < net.layers.size(); ++l) {
      const std::string base = prefix + "." + net_name + "." + std::to_string(l);
      detail::assign_checked(net.layers[l].W, ck.get(base + ".W"), base + ".W");
      MatX<S> b = net.layers[l].b;
      detail::assign_checked(b, ck.get(base + ".b"), base + ".b");
      net.layers[l].b = b;
    }
  };
  unpack_net("actor", agent.actor);
  unpack_net("critic1", agent.critic1);
  unpack_net("critic2", agent.critic2);
  unpack_net("target1", agent.target1);
  unpack_net("target2", agent.target2);
  const Mat& count = ck.get(prefix + ".norm.count");
  const Mat& mean = ck.get(prefix + ".norm.mean");
  const Mat& m2 = ck.get(prefix + ".norm.m2");
  if (mean.rows() != agent.obs_norm.dim() || m2.rows() != agent.obs_norm.dim())
    throw LoadError("checkpoint normalizer state has the wrong dimension");
  agent.obs_norm.restore(count(0, 0), mean.col(0).cast<S>(), m2.col(0).cast<S>());
}

}  // namespace lgr2
