#pragma once

#include <cmath>
#include <optional>
#include <utility>

#include "lgr2/mlp.hpp"
#include "lgr2/normalizer.hpp"
#include "lgr2/rng.hpp"
#include "lgr2/types.hpp"

namespace lgr2 {

template <class S>
struct BoxSpec {
  VecX<S> lo, hi;
  VecX<S> center() const { return (lo + hi) / S(2); }
  // Half-ranges floored away from zero so degenerate axes stay invertible.
  VecX<S> half() const {
    return ((hi - lo) / S(2)).cwiseMax(S(1e-6));
  }
  int dim() const { return static_cast<int>(lo.size()); }
};

template <class S>
struct SacConfig {
  S lr = S(1e-3);
  S alpha = S(0.05);     // entropy weight, fixed (no auto-tuning)
  S gamma = S(0.99);
  S tau = S(0.8);        // target <- tau*target + (1-tau)*online
  S adam_beta1 = S(0.9);
  S adam_beta2 = S(0.999);
  S log_std_min = S(-20);
  S log_std_max = S(2);
  bool clip_targets = true;  // Bellman targets clamped to [floor, 0]
  std::optional<S> target_clip_min;  // default floor: -1/(1-gamma)
};

// Twin-critic soft actor-critic over one observation space and one box
// action space. Observations entering any net must already be normalized.
template <class S>
struct SacAgent {
  int obs_dim = 0;
  int act_dim = 0;
  BoxSpec<S> box;
  SacConfig<S> cfg;
  Mlp<S> actor;  // obs -> [mean; log_std]
  Mlp<S> critic1, critic2;
  Mlp<S> target1, target2;
  Adam<S> actor_opt, critic1_opt, critic2_opt;
  RunningNormalizer<S> obs_norm{1};
};

template <class S>
SacAgent<S> make_sac_agent(int obs_dim, int act_dim, BoxSpec<S> box,
                           const std::vector<int>& hidden, SacConfig<S> cfg, Rng& rng) {
  SacAgent<S> a;
  a.obs_dim = obs_dim;
  a.act_dim = act_dim;
  a.box = std::move(box);
  a.cfg = cfg;

  std::vector<int> actor_w{obs_dim};
  actor_w.insert(actor_w.end(), hidden.begin(), hidden.end());
  actor_w.push_back(2 * act_dim);
  std::vector<int> critic_w{obs_dim + act_dim};
  critic_w.insert(critic_w.end(), hidden.begin(), hidden.end());
  critic_w.push_back(1);

  a.actor = Mlp<S>(actor_w, rng);
  a.critic1 = Mlp<S>(critic_w, rng);
  a.critic2 = Mlp<S>(critic_w, rng);
  a.target1 = a.critic1;
  a.target2 = a.critic2;
  a.actor_opt = Adam<S>(a.actor, cfg.lr, cfg.adam_beta1, cfg.adam_beta2);
  a.critic1_opt = Adam<S>(a.critic1, cfg.lr, cfg.adam_beta1, cfg.adam_beta2);
  a.critic2_opt = Adam<S>(a.critic2, cfg.lr, cfg.adam_beta1, cfg.adam_beta2);
  a.obs_norm = RunningNormalizer<S>(obs_dim);
  return a;
}

// ---------------------------------------------------------------------------
// Actor forward

namespace detail {
constexpr double kSquashEps = 1e-6;  // keeps log(1 - tanh^2) finite
}

template <class S>
struct ActorSample {
  MatX<S> action;    // act x B, env box coordinates
  VecX<S> log_prob;  // B
  // Caches for the backward pass.
  MatX<S> mean, log_std, noise, tanh_z;
  MatX<S> clamp_gate;  // 1 where log_std was inside its clamp range
  typename Mlp<S>::Cache net_cache;
};

// Squashed-Gaussian sample a = center + half * tanh(mean + std * noise),
// with the tanh and box change-of-variables folded into log_prob.
template <class S>
ActorSample<S> actor_sample(const SacAgent<S>& agent, const MatX<S>& obs,
                            const MatX<S>& noise) {
  if (!obs.allFinite()) throw InputError("actor received non-finite observations");
  const int m = agent.act_dim;
  const Eigen::Index B = obs.cols();

  ActorSample<S> out;
  const MatX<S> head = agent.actor.forward(obs, &out.net_cache);
  out.mean = head.topRows(m);
  const MatX<S> raw_ls = head.bottomRows(m);
  out.clamp_gate = ((raw_ls.array() > agent.cfg.log_std_min) &&
                    (raw_ls.array() < agent.cfg.log_std_max))
                       .template cast<S>()
                       .matrix();
  out.log_std = raw_ls.cwiseMax(agent.cfg.log_std_min).cwiseMin(agent.cfg.log_std_max);
  out.noise = noise;

  const MatX<S> std = out.log_std.array().exp().matrix();
  const MatX<S> z = out.mean + std.cwiseProduct(noise);
  out.tanh_z = z.array().tanh().matrix();

  const VecX<S> half = agent.box.half();
  const VecX<S> center = agent.box.center();
  out.action = ((out.tanh_z.array().colwise() * half.array()).colwise() +
                center.array())
                   .matrix();

  const S log2pi = S(std::log(2.0 * M_PI));
  out.log_prob = VecX<S>::Zero(B);
  for (Eigen::Index b = 0; b < B; ++b) {
    S lp = S(0);
    for (int i = 0; i < m; ++i) {
      const S xi = noise(i, b);
      const S t = out.tanh_z(i, b);
      lp += S(-0.5) * xi * xi - S(0.5) * log2pi - out.log_std(i, b);
      lp -= std::log(S(1) - t * t + S(detail::kSquashEps));
      lp -= std::log(half[i]);
    }
    out.log_prob[b] = lp;
  }
  return out;
}

template <class S>
MatX<S> actor_mean_action(const SacAgent<S>& agent, const MatX<S>& obs) {
  const MatX<S> head = agent.actor.forward(obs);
  const MatX<S> t = head.topRows(agent.act_dim).array().tanh().matrix();
  return ((t.array().colwise() * agent.box.half().array()).colwise() +
          agent.box.center().array())
      .matrix();
}

// Single-observation convenience: samples one action with its log-density.
template <class S>
std::pair<VecX<S>, double> forward_actor(const SacAgent<S>& agent, const VecX<S>& obs,
                                         Rng& rng) {
  MatX<S> noise(agent.act_dim, 1);
  for (int i = 0; i < agent.act_dim; ++i) noise(i, 0) = static_cast<S>(rng.normal01());
  const ActorSample<S> s = actor_sample<S>(agent, obs, noise);
  return {s.action.col(0), static_cast<double>(s.log_prob[0])};
}

// ---------------------------------------------------------------------------
// Critic plumbing

template <class S>
MatX<S> critic_input(const SacAgent<S>& agent, const MatX<S>& obs, const MatX<S>& act) {
  // Actions are rescaled to [-1, 1] so both input blocks share a scale.
  const VecX<S> inv_half = agent.box.half().cwiseInverse();
  MatX<S> in(agent.obs_dim + agent.act_dim, obs.cols());
  in.topRows(agent.obs_dim) = obs;
  in.bottomRows(agent.act_dim) =
      ((act.colwise() - agent.box.center()).array().colwise() * inv_half.array())
          .matrix();
  return in;
}

template <class S>
struct SacBatch {
  MatX<S> obs;       // normalized, obs_dim x B
  MatX<S> act;       // env box coordinates
  VecX<S> reward;
  MatX<S> obs_next;  // normalized
  VecX<S> mask;      // 1 = bootstrap, 0 = terminal
};

// Bellman target y = r + gamma * mask * (min Q'(s', a') - alpha log pi(a'|s')),
// optionally clamped to the feasible value range of {-1, 0} rewards.
template <class S>
VecX<S> critic_targets(const SacAgent<S>& agent, const SacBatch<S>& batch,
                       const MatX<S>& noise_next) {
  const ActorSample<S> next = actor_sample<S>(agent, batch.obs_next, noise_next);
  const MatX<S> in = critic_input(agent, batch.obs_next, next.action);
  const MatX<S> q1 = agent.target1.forward(in);
  const MatX<S> q2 = agent.target2.forward(in);
  const VecX<S> qmin = q1.row(0).cwiseMin(q2.row(0)).transpose();

  VecX<S> y = batch.reward +
              agent.cfg.gamma *
                  batch.mask.cwiseProduct(qmin - agent.cfg.alpha * next.log_prob);
  if (agent.cfg.clip_targets) {
    const S floor = agent.cfg.target_clip_min
                        ? *agent.cfg.target_clip_min
                        : S(-1) / (S(1) - agent.cfg.gamma);
    y = y.cwiseMax(floor).cwiseMin(S(0));
  }
  return y;
}

// Joint critic loss L = (mse(Q1, y) + mse(Q2, y)) / 2 with y held constant.
// Gradient accumulation is optional so the same routine serves training and
// finite-difference checks.
template <class S>
S critic_loss_and_grads(const SacAgent<S>& agent, const SacBatch<S>& batch,
                        const VecX<S>& y, std::vector<DenseLayer<S>>* g1,
                        std::vector<DenseLayer<S>>* g2) {
  const MatX<S> in = critic_input(agent, batch.obs, batch.act);
  const Eigen::Index B = in.cols();

  typename Mlp<S>::Cache c1, c2;
  const MatX<S> q1 = agent.critic1.forward(in, g1 ? &c1 : nullptr);
  const MatX<S> q2 = agent.critic2.forward(in, g2 ? &c2 : nullptr);
  const VecX<S> e1 = q1.row(0).transpose() - y;
  const VecX<S> e2 = q2.row(0).transpose() - y;
  const S inv_b = S(1) / static_cast<S>(B);
  const S loss = (e1.squaredNorm() + e2.squaredNorm()) * inv_b / S(2);

  if (g1) agent.critic1.backward(c1, e1.transpose() * inv_b, *g1);
  if (g2) agent.critic2.backward(c2, e2.transpose() * inv_b, *g2);
  return loss;
}

template <class S>
S update_critics(SacAgent<S>& agent, const SacBatch<S>& batch, Rng& rng) {
  if (!batch.reward.allFinite()) throw InputError("batch rewards are not finite");
  MatX<S> noise(agent.act_dim, batch.obs_next.cols());
  for (Eigen::Index b = 0; b < noise.cols(); ++b)
    for (int i = 0; i < agent.act_dim; ++i)
      noise(i, b) = static_cast<S>(rng.normal01());
  const VecX<S> y = critic_targets(agent, batch, noise);

  auto g1 = zero_grads(agent.critic1);
  auto g2 = zero_grads(agent.critic2);
  const S loss = critic_loss_and_grads(agent, batch, y, &g1, &g2);
  if (!std::isfinite(static_cast<double>(loss)))
    throw StateError("critic loss diverged (non-finite)");
  agent.critic1_opt.step(agent.critic1, g1);
  agent.critic2_opt.step(agent.critic2, g2);
  return loss;
}

// ---------------------------------------------------------------------------
// Actor update

template <class S>
struct BcBatch {
  MatX<S> obs;  // normalized demo observations
  MatX<S> act;  // demonstrated actions, env box coordinates
  S weight = S(0);
};

// Actor loss mean(alpha * log pi - min Q) for fixed sampling noise, plus an
// optional behaviour-cloning term weight * mean ||mean_action - a_demo||^2.
// Gradients flow through both the entropy term and the critics' action
// input (reparameterization path).
template <class S>
S actor_loss_and_grads(const SacAgent<S>& agent, const MatX<S>& obs, const MatX<S>& noise,
                       std::vector<DenseLayer<S>>* grads,
                       const BcBatch<S>* bc = nullptr) {
  const int m = agent.act_dim;
  const Eigen::Index B = obs.cols();
  const S inv_b = S(1) / static_cast<S>(B);
  const VecX<S> half = agent.box.half();

  const ActorSample<S> s = actor_sample<S>(agent, obs, noise);

  const MatX<S> in = critic_input(agent, obs, s.action);
  typename Mlp<S>::Cache c1, c2;
  const MatX<S> q1 = agent.critic1.forward(in, grads ? &c1 : nullptr);
  const MatX<S> q2 = agent.critic2.forward(in, grads ? &c2 : nullptr);
  const VecX<S> qmin = q1.row(0).cwiseMin(q2.row(0)).transpose();

  S loss = (agent.cfg.alpha * s.log_prob - qmin).sum() * inv_b;

  if (grads) {
    // dL/d(critic input) through the chosen min branch.
    MatX<S> sel1(1, B), sel2(1, B);
    for (Eigen::Index b = 0; b < B; ++b) {
      const bool one = q1(0, b) <= q2(0, b);
      sel1(0, b) = one ? -inv_b : S(0);
      sel2(0, b) = one ? S(0) : -inv_b;
    }
    auto sink1 = zero_grads(agent.critic1);  // discarded: critics are frozen here
    auto sink2 = zero_grads(agent.critic2);
    const MatX<S> din1 = agent.critic1.backward(c1, sel1, sink1, true);
    const MatX<S> din2 = agent.critic2.backward(c2, sel2, sink2, true);
    // dL/da in unit coordinates -> env coordinates.
    MatX<S> da = din1.bottomRows(m) + din2.bottomRows(m);
    da.array().colwise() /= half.array();

    const MatX<S> std = s.log_std.array().exp();
    MatX<S> d_head(2 * m, B);
    for (Eigen::Index b = 0; b < B; ++b) {
      for (int i = 0; i < m; ++i) {
        const S t = s.tanh_z(i, b);
        const S u = S(1) - t * t;                    // d tanh
        const S dlp_dz = S(2) * t * u / (u + S(detail::kSquashEps));
        const S da_dz = half[i] * u;
        const S dz_dls = std(i, b) * s.noise(i, b);  // z = mean + e^ls * xi
        const S dL_dz = agent.cfg.alpha * inv_b * dlp_dz + da(i, b) * da_dz;
        d_head(i, b) = dL_dz;                        // via mean
        S dls = dL_dz * dz_dls - agent.cfg.alpha * inv_b;  // -1 from -log_std
        d_head(m + i, b) = dls * s.clamp_gate(i, b);
      }
    }
    agent.actor.backward(s.net_cache, d_head, *grads);
  }

  if (bc && bc->weight > S(0) && bc->obs.cols() > 0) {
    const Eigen::Index Bd = bc->obs.cols();
    const S inv_bd = S(1) / static_cast<S>(Bd);
    typename Mlp<S>::Cache cd;
    const MatX<S> head = agent.actor.forward(bc->obs, grads ? &cd : nullptr);
    const MatX<S> t = head.topRows(m).array().tanh().matrix();
    const MatX<S> a_det = ((t.array().colwise() * half.array()).colwise() +
                           agent.box.center().array())
                              .matrix();
    const MatX<S> err = a_det - bc->act;
    loss += bc->weight * err.squaredNorm() * inv_bd;
    if (grads) {
      const MatX<S> base = (err.array() * (S(1) - t.array().square())).matrix();
      MatX<S> d_head = MatX<S>::Zero(2 * m, Bd);
      d_head.topRows(m) =
          (S(2) * bc->weight * inv_bd) *
          (base.array().colwise() * half.array()).matrix();
      agent.actor.backward(cd, d_head, *grads);
    }
  }
  return loss;
}

template <class S>
S update_actor(SacAgent<S>& agent, const SacBatch<S>& batch, Rng& rng,
               const BcBatch<S>* bc = nullptr) {
  MatX<S> noise(agent.act_dim, batch.obs.cols());
  for (Eigen::Index b = 0; b < noise.cols(); ++b)
    for (int i = 0; i < agent.act_dim; ++i)
      noise(i, b) = static_cast<S>(rng.normal01());
  auto grads = zero_grads(agent.actor);
  const S loss = actor_loss_and_grads(agent, batch.obs, noise, &grads, bc);
  if (!std::isfinite(static_cast<double>(loss)))
    throw StateError("actor loss diverged (non-finite)");
  agent.actor_opt.step(agent.actor, grads);
  return loss;
}

// theta_target <- tau * theta_target + (1 - tau) * theta_online, elementwise.
template <class S>
void polyak_update(SacAgent<S>& agent) {
  const S tau = agent.cfg.tau;
  auto blend = [tau](Mlp<S>& target, const Mlp<S>& online) {
    for (std::size_t l = 0; l < target.layers.size(); ++l) {
      target.layers[l].W = tau * target.layers[l].W + (S(1) - tau) * online.layers[l].W;
      target.layers[l].b = tau * target.layers[l].b + (S(1) - tau) * online.layers[l].b;
    }
  };
  blend(agent.target1, agent.critic1);
  blend(agent.target2, agent.critic2);
}

// Collection-time exploration: an epsilon-greedy uniform draw over the box,
// otherwise the deterministic policy action plus Gaussian noise scaled by
// the action range, clipped back into the box.
template <class S>
VecX<S> explore_action(const SacAgent<S>& agent, const VecX<S>& norm_obs, Rng& rng,
                       double random_eps, double noise_eps) {
  const VecX<S>& lo = agent.box.lo;
  const VecX<S>& hi = agent.box.hi;
  if (rng.uniform01() < random_eps) {
    VecX<S> a(agent.act_dim);
    for (int i = 0; i < agent.act_dim; ++i)
      a[i] = static_cast<S>(rng.uniform(static_cast<double>(lo[i]), static_cast<double>(hi[i])));
    return a;
  }
  VecX<S> a = actor_mean_action<S>(agent, norm_obs).col(0);
  if (noise_eps > 0.0) {
    for (int i = 0; i < agent.act_dim; ++i)
      a[i] += static_cast<S>(noise_eps * rng.normal01()) * (hi[i] - lo[i]);
  }
  return a.cwiseMax(lo).cwiseMin(hi);
}

}  // namespace lgr2
