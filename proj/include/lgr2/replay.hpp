#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "lgr2/env.hpp"
#include "lgr2/reward.hpp"
#include "lgr2/rng.hpp"
#include "lgr2/types.hpp"

namespace lgr2 {

// Higher-level transition (s_t, g*, g_t, r_t^H, s_{t+k}). The stored
// reward is the sum of environment rewards over the window; language or
// hindsight relabeling replaces it at sample/copy time.
struct SubgoalTransition {
  Vecf s;
  Vec3 g_star = Vec3::Zero();  // final goal the episode pursued
  Vec3 g = Vec3::Zero();       // predicted subgoal (the higher-level action)
  double r_h = 0.0;
  Vecf s_next;
  bool relabeled = false;
  bool terminal = false;  // window ends the episode
};

// One episode of higher-level behaviour, time-contiguous.
struct HigherTrajectory {
  std::vector<SubgoalTransition> steps;

  // The achieved-state sequence (feature of each s_next), the pool HER
  // draws replacement goals from.
  std::vector<Vec3> achieved_states(FeatureSelector f) const;
};

// Fixed-capacity FIFO ring: pushing beyond capacity overwrites the oldest
// entry.
template <class T>
class ReplayRing {
 public:
  explicit ReplayRing(std::size_t capacity) : capacity_(capacity) {
    if (capacity == 0) throw ConfigError("replay capacity must be positive");
    items_.reserve(capacity);
  }

  void push(T item) {
    if (items_.size() < capacity_) {
      items_.push_back(std::move(item));
    } else {
      items_[head_] = std::move(item);
      head_ = (head_ + 1) % capacity_;
    }
  }

  std::size_t size() const { return items_.size(); }
  std::size_t capacity() const { return capacity_; }
  bool empty() const { return items_.empty(); }

  // Logical indexing: 0 is the oldest stored element.
  const T& at(std::size_t i) const { return items_[(head_ + i) % items_.size()]; }

  const T& sample(Rng& rng) const {
    if (items_.empty()) throw StateError("cannot sample from an empty replay buffer");
    return items_[rng.below(items_.size())];
  }

 private:
  std::vector<T> items_;
  std::size_t head_ = 0;  // oldest element once full
  std::size_t capacity_;
};

using LowerBuffer = ReplayRing<PrimitiveTransition>;
using HigherBuffer = ReplayRing<HigherTrajectory>;

void push_lower(LowerBuffer& buffer, PrimitiveTransition t);
void push_higher(HigherBuffer& buffer, HigherTrajectory trajectory);

// Uniform with replacement; deterministic given the rng state.
template <class T>
std::vector<T> sample_batch(const ReplayRing<T>& buffer, std::size_t m, Rng& rng) {
  if (buffer.empty()) throw StateError("cannot sample from an empty replay buffer");
  std::vector<T> out;
  out.reserve(m);
  for (std::size_t i = 0; i < m; ++i) out.push_back(buffer.sample(rng));
  return out;
}

// Language-guided reward relabeling: every reward becomes the stationary
// indicator of s_next against params.goal. Operates on the sampled copy,
// never on buffer contents. Idempotent.
void relabel_language(std::vector<SubgoalTransition>& batch, const RewardParams& params);
void relabel_language(HigherTrajectory& trajectory, const RewardParams& params);

// Variant for mixed batches that may contain hindsight copies: each
// transition is relabeled against its own stored goal. Equals
// relabel_language wherever g_star == params.goal.
void relabel_against_stored_goals(std::vector<SubgoalTransition>& batch,
                                  const RewardParams& params);

enum class HerStrategy { final, future };

// Hindsight goal relabeling: returns `count` copies of the trajectory, each
// with g_star replaced by an achieved state (the last one for `final`, a
// uniformly drawn one for `future`) and rewards recomputed against it.
// The original trajectory is untouched.
std::vector<HigherTrajectory> her_relabel(const HigherTrajectory& trajectory,
                                          const RewardParams& params, HerStrategy strategy,
                                          int count, Rng& rng);

// Mean absolute gap between stored higher rewards and their recomputation
// by re-executing the current lower policy for k steps from the stored
// state. Relabeled (language-guided) rewards are recomputation-free and
// contribute exactly 0. `lower_policy(obs, subgoal)` must return the
// 4-dim primitive action.
template <class PolicyFn>
double staleness_diagnostic(const HigherBuffer& buffer, PolicyFn&& lower_policy,
                            const Environment& env, int k, std::size_t sample_n, Rng& rng) {
  if (buffer.empty() || sample_n == 0) return 0.0;
  double total = 0.0;
  for (std::size_t i = 0; i < sample_n; ++i) {
    const HigherTrajectory& traj = buffer.sample(rng);
    if (traj.steps.empty()) continue;
    const SubgoalTransition& t = traj.steps[rng.below(traj.steps.size())];
    if (t.relabeled) continue;  // stationary by construction
    EnvState state = env.state_from_obs(t.s.cast<double>());
    double sum = 0.0;
    for (int step = 0; step < k; ++step) {
      const Vec4 a = lower_policy(env.observe(state), t.g);
      StepResult r = env.step(state, a);
      state = r.state;
      sum += (env.achieved_goal(state) - t.g_star).norm() > env.epsilon() ? -1.0 : 0.0;
    }
    total += std::abs(t.r_h - sum);
  }
  return total / static_cast<double>(sample_n);
}

// Flat-record persistence (same format as scripted demos): a header row
// naming the schema and env kind, then one CSV row per transition.
void save_transitions(const std::string& path, const std::vector<PrimitiveTransition>& ts,
                      EnvKind kind);
std::pair<std::vector<PrimitiveTransition>, EnvKind> load_transitions(
    const std::string& path);

void save_higher_buffer(const std::string& path, const HigherBuffer& buffer, EnvKind kind);
std::pair<std::vector<HigherTrajectory>, EnvKind> load_higher_trajectories(
    const std::string& path);

}  // namespace lgr2
