#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "lgr2/checkpoint.hpp"
#include "lgr2/env.hpp"
#include "lgr2/replay.hpp"
#include "lgr2/reward.hpp"
#include "lgr2/sac.hpp"
#include "lgr2/translate.hpp"

namespace lgr2 {

enum class TrainMode { lgr2, lgr2_no_her, hier, hac, flat_l2r };

inline std::string to_string(TrainMode m) {
  switch (m) {
    case TrainMode::lgr2: return "lgr2";
    case TrainMode::lgr2_no_her: return "lgr2_no_her";
    case TrainMode::hier: return "hier";
    case TrainMode::hac: return "hac";
    case TrainMode::flat_l2r: return "flat_l2r";
  }
  return "?";
}

inline TrainMode train_mode_from_string(const std::string& s) {
  if (s == "lgr2") return TrainMode::lgr2;
  if (s == "lgr2_no_her") return TrainMode::lgr2_no_her;
  if (s == "hier") return TrainMode::hier;
  if (s == "hac") return TrainMode::hac;
  if (s == "flat_l2r") return TrainMode::flat_l2r;
  throw ConfigError("unknown mode: '" + s + "'");
}

struct TrainConfig {
  EnvKind env_kind = EnvKind::maze;
  std::string instruction = "navigate to the bottom right corner";
  TrainMode mode = TrainMode::lgr2;

  int k = 10;            // subgoal interval
  int horizon = 200;
  int episodes = 2000;   // one collected episode per cycle
  int her_count = 4;     // hindsight copies per sampled trajectory
  int relabel_batch = 8; // M: trajectories sampled for relabeling per cycle

  int n_batches = 10;    // gradient steps per cycle and level
  int batch_size = 256;
  int layers = 3;
  int hidden = 64;       // desk-scale width; 512 reproduces the reference nets
  double q_lr = 1e-3;
  double pi_lr = 1e-3;
  double alpha = 0.05;
  double tau = 0.8;
  double gamma = 0.99;
  double random_eps = 0.2;
  double noise_eps = 0.05;
  double norm_eps = 0.01;
  double norm_clip = 5.0;
  double clip_obs = 200.0;

  std::size_t buffer_lower = 100000;  // transitions
  std::size_t buffer_higher = 2000;   // trajectories
  int lower_her_k = 4;                // hindsight copies per pushed lower transition

  std::optional<bool> demo_enabled;   // default: manipulation only
  double bc_weight = 0.1;             // annealed to 0 over the first half of training
  int demo_batch = 128;

  double epsilon = 0.5;  // success tolerance (task units)
  int maze_width = 10;
  int maze_height = 10;

  std::vector<std::uint64_t> seeds = {0, 1, 2, 3, 4};

  bool use_demo() const {
    return demo_enabled.value_or(env_kind != EnvKind::maze) &&
           mode != TrainMode::flat_l2r;
  }

  // Throws ConfigError on contradictions; returns lint warnings.
  std::vector<std::string> validate() const {
    if (k < 1 || horizon < 1 || episodes < 1) throw ConfigError("k, horizon, episodes must be positive");
    if (horizon % k != 0) throw ConfigError("k must divide the horizon");
    if (batch_size < 1 || n_batches < 0) throw ConfigError("bad batch configuration");
    if (static_cast<std::size_t>(batch_size) > buffer_lower)
      throw ConfigError("batch_size exceeds the lower buffer capacity");
    if (her_count < 1) throw ConfigError("her_count must be >= 1");
    if (relabel_batch < 0) throw ConfigError("relabel_batch must be >= 0");
    if (seeds.empty()) throw ConfigError("at least one seed is required");
    if (demo_enabled.value_or(false) && env_kind == EnvKind::maze)
      throw ConfigError("no demonstration is used for the maze task");
    std::vector<std::string> warnings;
    if (mode == TrainMode::flat_l2r && k != 10)
      warnings.push_back("flat_l2r ignores the subgoal interval k");
    if (mode != TrainMode::lgr2 && her_count != 4)
      warnings.push_back("her_count is only used in lgr2 mode");
    return warnings;
  }
};

struct CycleMetrics {
  int cycle = 0;
  long env_steps = 0;
  bool train_success = false;
  double actor_loss_low = 0, critic_loss_low = 0;
  double actor_loss_high = 0, critic_loss_high = 0;
  std::size_t lower_size = 0, higher_size = 0;
};

// Instrumentation: operation counters plus a per-cycle phase trace
// (0 = collection pushes, 1 = relabel phase, 2 = learning) used to assert
// the push -> relabel -> learn ordering.
struct OpCounters {
  long push_lower = 0;
  long push_higher = 0;
  long push_higher_relabeled = 0;  // hindsight copies appended by relabeling
  long sample_lower = 0;
  long sample_higher = 0;
  long grad_steps_lower = 0;
  long grad_steps_higher = 0;
  long relabel_ops = 0;  // transitions whose reward was language-relabeled
  long her_calls = 0;
  long lower_reward_mutations = 0;  // writes to stored lower rewards (always 0)
  long env_steps = 0;
  long eval_env_steps = 0;
  long staleness_env_steps = 0;
};

template <class S>
class Trainer {
 public:
  Trainer(TrainConfig cfg, std::uint64_t seed,
          std::optional<RewardParams> params_override = std::nullopt)
      : cfg_(std::move(cfg)),
        seed_(seed),
        env_(cfg_.env_kind, seed,
             Environment::Options{cfg_.maze_width, cfg_.maze_height}),
        lower_buf_(cfg_.buffer_lower),
        higher_buf_(cfg_.buffer_higher),
        rng_(seed) {
    cfg_.validate();
    rng_init_ = rng_.split(1);
    rng_collect_ = rng_.split(2);
    rng_update_ = rng_.split(3);
    rng_her_ = rng_.split(4);
    rng_stale_ = rng_.split(5);

    params_ = params_override ? *params_override
                              : parse_instruction(cfg_.instruction, env_);
    validate_reward_params(params_, env_);
    env_.set_goal(params_.goal);

    const int od = env_.obs_dim() + Environment::kGoalDim;
    std::vector<int> hidden(cfg_.layers, cfg_.hidden);

    SacConfig<S> low_cfg;
    low_cfg.lr = static_cast<S>(cfg_.pi_lr);
    low_cfg.alpha = static_cast<S>(cfg_.alpha);
    low_cfg.gamma = static_cast<S>(cfg_.gamma);
    low_cfg.tau = static_cast<S>(cfg_.tau);
    BoxSpec<S> act_box{VecX<S>::Zero(4), VecX<S>::Ones(4)};
    lower_ = make_sac_agent<S>(od, Environment::kActionDim, act_box, hidden, low_cfg,
                               rng_init_);

    SacConfig<S> high_cfg = low_cfg;
    if (cfg_.mode == TrainMode::hier) {
      // Stored higher rewards are k-step sums in [-k, 0]; widen the target
      // clamp accordingly.
      high_cfg.target_clip_min =
          static_cast<S>(-cfg_.k / (1.0 - cfg_.gamma));
    }
    BoxSpec<S> goal_box{env_.workspace().lo().template cast<S>(),
                        env_.workspace().hi().template cast<S>()};
    higher_ = make_sac_agent<S>(od, Environment::kGoalDim, goal_box, hidden, high_cfg,
                                rng_init_);

    if (cfg_.use_demo()) demo_ = scripted_demo(env_, seed);
  }

  const Environment& env() const { return env_; }
  const RewardParams& params() const { return params_; }
  const TrainConfig& config() const { return cfg_; }
  SacAgent<S>& lower_agent() { return lower_; }
  SacAgent<S>& higher_agent() { return higher_; }
  const LowerBuffer& lower_buffer() const { return lower_buf_; }
  const HigherBuffer& higher_buffer() const { return higher_buf_; }
  const OpCounters& counters() const { return counters_; }
  const std::vector<int>& last_cycle_phases() const { return phase_trace_; }
  int cycles_done() const { return cycle_; }

  struct Episode {
    HigherTrajectory trajectory;
    std::vector<PrimitiveTransition> lower;
    bool success = false;
  };

  // One environment episode under the exploration policy. The higher level
  // acts every k steps and the subgoal is held constant in between; the
  // stored higher reward sums the window's environment rewards.
  Episode collect_episode(Rng& rng) {
    Episode ep;
    EnvState state = env_.reset(rng.raw()).first;
    env_.set_goal(params_.goal);
    const Vec3& g_star = params_.goal;

    Vec obs = env_.observe(state);
    Vec3 subgoal = Vec3::Zero();
    Vecf window_start;
    double window_sum = 0.0;
    double last_env_reward = -1.0;

    for (int t = 0; t < cfg_.horizon; ++t) {
      if (t % cfg_.k == 0) {
        if (flat()) {
          subgoal = g_star;
        } else {
          const VecX<S> hin = stack_input(obs, g_star);
          higher_.obs_norm.update(hin);
          subgoal = explore_action<S>(higher_, higher_.obs_norm.normalize(hin),
                                      rng, cfg_.random_eps, cfg_.noise_eps)
                        .template cast<double>();
        }
        window_start = obs.cast<float>();
        window_sum = 0.0;
      }
      const VecX<S> lin = stack_input(obs, subgoal);
      lower_.obs_norm.update(lin);
      const Vec4 a = explore_action<S>(lower_, lower_.obs_norm.normalize(lin), rng,
                                       cfg_.random_eps, cfg_.noise_eps)
                         .template cast<double>();
      StepResult r = env_.step(state, a);
      ++counters_.env_steps;
      const Vec next_obs = env_.observe(r.state);

      PrimitiveTransition tr;
      tr.s = obs.cast<float>();
      tr.g = subgoal.cast<float>();
      tr.a = a.cast<float>();
      tr.env_reward = r.env_reward;
      tr.r_l = flat() ? evaluate_reward(params_, next_obs)
                      : ((next_obs.head<3>() - subgoal).norm() > cfg_.epsilon ? -1.0 : 0.0);
      tr.s_next = next_obs.cast<float>();
      tr.terminal = t == cfg_.horizon - 1;
      ep.lower.push_back(std::move(tr));

      window_sum += r.env_reward;
      last_env_reward = r.env_reward;
      if ((t + 1) % cfg_.k == 0 || t == cfg_.horizon - 1) {
        SubgoalTransition st;
        st.s = window_start;
        st.g_star = g_star;
        st.g = subgoal;
        st.r_h = window_sum;
        st.s_next = next_obs.cast<float>();
        st.terminal = t == cfg_.horizon - 1;
        ep.trajectory.steps.push_back(std::move(st));
      }
      obs = next_obs;
      state = r.state;
    }
    ep.success = last_env_reward == 0.0;
    return ep;
  }

  // One full Algorithm-1 cycle: collect, store (with hindsight copies),
  // relabel, then n_batches SAC steps per level.
  CycleMetrics train_cycle() {
    phase_trace_.clear();
    CycleMetrics m;
    m.cycle = cycle_;

    // -- Phase 0: collection and storage --
    Episode ep = collect_episode(rng_collect_);
    m.train_success = ep.success;
    for (std::size_t i = 0; i < ep.lower.size(); ++i) {
      push_lower_instrumented(ep.lower[i]);
      if (!flat() && cfg_.lower_her_k > 0) push_lower_hindsight(ep.lower, i);
    }
    if (!flat()) {
      phase_trace_.push_back(0);
      ++counters_.push_higher;
      push_higher(higher_buf_, ep.trajectory);
    }

    // -- Phase 1: language-guided relabeling of sampled trajectories --
    if (relabeling_mode() && higher_buf_.size() > 0) {
      for (int j = 0; j < cfg_.relabel_batch; ++j) {
        phase_trace_.push_back(1);
        ++counters_.sample_higher;
        HigherTrajectory sigma = higher_buf_.sample(rng_her_);
        if (sigma.steps.empty()) continue;
        if (!sigma.steps.front().relabeled &&
            (sigma.steps.front().g_star - params_.goal).norm() < 1e-5) {
          relabel_language(sigma, params_);
          counters_.relabel_ops += static_cast<long>(sigma.steps.size());
        }
        if (cfg_.mode == TrainMode::lgr2) {
          ++counters_.her_calls;
          auto relabeled = her_relabel(sigma, params_, HerStrategy::future,
                                       cfg_.her_count, rng_her_);
          for (HigherTrajectory& tr : relabeled) {
            ++counters_.push_higher;
            ++counters_.push_higher_relabeled;
            push_higher(higher_buf_, std::move(tr));
          }
        }
      }
    }

    // -- Phase 2: policy learning --
    if (warm()) {
      for (int b = 0; b < cfg_.n_batches; ++b) {
        phase_trace_.push_back(2);
        const auto [cl, al] = lower_gradient_step();
        m.critic_loss_low += cl;
        m.actor_loss_low += al;
        if (!flat()) {
          const auto [ch, ah] = higher_gradient_step();
          m.critic_loss_high += ch;
          m.actor_loss_high += ah;
        }
      }
      if (cfg_.n_batches > 0) {
        m.critic_loss_low /= cfg_.n_batches;
        m.actor_loss_low /= cfg_.n_batches;
        m.critic_loss_high /= cfg_.n_batches;
        m.actor_loss_high /= cfg_.n_batches;
        polyak_update(lower_);
        if (!flat()) polyak_update(higher_);
      }
    }

    ++cycle_;
    m.env_steps = counters_.env_steps;
    m.lower_size = lower_buf_.size();
    m.higher_size = higher_buf_.size();
    return m;
  }

  // Deterministic (mean-action) rollouts; success means the final achieved
  // state lies within epsilon of the goal.
  double evaluate(int episodes, std::uint64_t eval_seed) {
    if (episodes < 1) throw InputError("evaluation needs at least one episode");
    Environment sim = env_;
    Rng rng(eval_seed);
    int wins = 0;
    for (int e = 0; e < episodes; ++e) {
      EnvState state = sim.reset(rng.raw()).first;
      sim.set_goal(params_.goal);
      Vec obs = sim.observe(state);
      Vec3 subgoal = params_.goal;
      double last = -1.0;
      for (int t = 0; t < cfg_.horizon; ++t) {
        if (!flat() && t % cfg_.k == 0) {
          const VecX<S> hin = higher_.obs_norm.normalize(stack_input(obs, params_.goal));
          subgoal =
              actor_mean_action<S>(higher_, hin).col(0).template cast<double>();
        }
        const VecX<S> lin = lower_.obs_norm.normalize(stack_input(obs, subgoal));
        const Vec4 a =
            actor_mean_action<S>(lower_, lin).col(0).template cast<double>();
        StepResult r = sim.step(state, a);
        ++counters_.eval_env_steps;
        state = r.state;
        obs = sim.observe(state);
        last = r.env_reward;
      }
      if (last == 0.0) ++wins;
    }
    return static_cast<double>(wins) / episodes;
  }

  // Mean |stored - recomputed| higher reward under the current lower
  // policy; 0 on language-relabeled rewards by construction.
  double staleness(std::size_t sample_n) {
    if (higher_buf_.empty()) return 0.0;
    auto policy = [this](const Vec& obs, const Vec3& g) -> Vec4 {
      counters_.staleness_env_steps += 1;
      const VecX<S> lin = lower_.obs_norm.normalize(stack_input(obs, g));
      return actor_mean_action<S>(lower_, lin).col(0).template cast<double>();
    };
    return staleness_diagnostic(higher_buf_, policy, env_, cfg_.k, sample_n, rng_stale_);
  }

  // Same diagnostic over a relabeled snapshot of the buffer.
  double staleness_relabeled(std::size_t sample_n) {
    if (higher_buf_.empty()) return 0.0;
    HigherBuffer snapshot(std::max<std::size_t>(1, sample_n));
    for (std::size_t i = 0; i < sample_n; ++i) {
      HigherTrajectory t = higher_buf_.sample(rng_stale_);
      std::vector<SubgoalTransition>& steps = t.steps;
      relabel_against_stored_goals(steps, params_);
      snapshot.push(std::move(t));
    }
    auto policy = [this](const Vec& obs, const Vec3& g) -> Vec4 {
      counters_.staleness_env_steps += 1;
      const VecX<S> lin = lower_.obs_norm.normalize(stack_input(obs, g));
      return actor_mean_action<S>(lower_, lin).col(0).template cast<double>();
    };
    return staleness_diagnostic(snapshot, policy, env_, cfg_.k, sample_n, rng_stale_);
  }

  void save(const std::string& path) const {
    Checkpoint ck;
    ck.env = to_string(cfg_.env_kind);
    Mat meta(1, 4);
    meta << static_cast<double>(seed_), static_cast<double>(cfg_.k),
        static_cast<double>(cfg_.horizon), static_cast<double>(cycle_);
    ck.put("meta", meta);
    Mat goal(3, 1);
    goal << params_.goal.x(), params_.goal.y(), params_.goal.z();
    ck.put("goal", goal);
    pack_agent(ck, "lower", lower_);
    pack_agent(ck, "higher", higher_);
    save_checkpoint(path, ck);
  }

  void load(const std::string& path) {
    const Checkpoint ck = load_checkpoint(path);
    if (ck.env != to_string(cfg_.env_kind))
      throw LoadError("checkpoint was trained on env '" + ck.env + "'");
    unpack_agent(ck, "lower", lower_);
    unpack_agent(ck, "higher", higher_);
  }

  // Sampled the way gradient batches are; used by diagnostics and tests.
  std::vector<SubgoalTransition> sample_higher_transitions(std::size_t n, Rng& rng) {
    std::vector<SubgoalTransition> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      const HigherTrajectory& traj = higher_buf_.sample(rng);
      out.push_back(traj.steps[rng.below(traj.steps.size())]);
    }
    return out;
  }

 private:
  bool flat() const { return cfg_.mode == TrainMode::flat_l2r; }
  bool relabeling_mode() const {
    return cfg_.mode == TrainMode::lgr2 || cfg_.mode == TrainMode::lgr2_no_her;
  }

  std::size_t higher_transition_count() const {
    std::size_t n = 0;
    for (std::size_t i = 0; i < higher_buf_.size(); ++i)
      n += higher_buf_.at(i).steps.size();
    return n;
  }

  bool warm() const {
    if (lower_buf_.size() < static_cast<std::size_t>(cfg_.batch_size)) return false;
    if (flat()) return true;
    return higher_transition_count() >= static_cast<std::size_t>(cfg_.batch_size);
  }

  VecX<S> stack_input(const Vec& obs, const Vec3& goal) const {
    VecX<S> v(obs.size() + 3);
    v.head(obs.size()) = obs.cast<S>();
    v.tail(3) = goal.cast<S>();
    return v;
  }

  void push_lower_instrumented(const PrimitiveTransition& t) {
    phase_trace_.push_back(0);
    ++counters_.push_lower;
    push_lower(lower_buf_, t);
  }

  // Hindsight copies for the lower level: the subgoal is replaced by the
  // gripper position achieved at a random later step of the same episode
  // and the reward recomputed. Applied at push time, uniformly across the
  // hierarchical modes.
  void push_lower_hindsight(const std::vector<PrimitiveTransition>& episode,
                            std::size_t idx) {
    for (int j = 0; j < cfg_.lower_her_k; ++j) {
      const std::size_t pick = idx + rng_her_.below(episode.size() - idx);
      PrimitiveTransition copy = episode[idx];
      copy.g = episode[pick].s_next.head<3>();
      copy.r_l = ((copy.s_next.head<3>() - copy.g).cast<double>().norm() > cfg_.epsilon)
                     ? -1.0
                     : 0.0;
      phase_trace_.push_back(0);
      ++counters_.push_lower;
      push_lower(lower_buf_, std::move(copy));
    }
  }

  SacBatch<S> build_lower_batch() {
    const int B = cfg_.batch_size;
    const int d = env_.obs_dim() + 3;
    MatX<S> obs(d, B), obs_next(d, B);
    MatX<S> act(4, B);
    VecX<S> rew(B), mask(B);
    for (int i = 0; i < B; ++i) {
      ++counters_.sample_lower;
      const PrimitiveTransition& t = lower_buf_.sample(rng_update_);
      obs.col(i) = stack_float(t.s, t.g);
      obs_next.col(i) = stack_float(t.s_next, t.g);
      act.col(i) = t.a.template cast<S>();
      rew[i] = static_cast<S>(t.r_l);
      mask[i] = t.terminal ? S(0) : S(1);
    }
    SacBatch<S> b;
    b.obs = lower_.obs_norm.normalize_batch(obs);
    b.obs_next = lower_.obs_norm.normalize_batch(obs_next);
    b.act = std::move(act);
    b.reward = std::move(rew);
    b.mask = std::move(mask);
    return b;
  }

  VecX<S> stack_float(const Vecf& obs, const Vecf& goal) const {
    VecX<S> v(obs.size() + goal.size());
    v.head(obs.size()) = obs.template cast<S>();
    v.tail(goal.size()) = goal.template cast<S>();
    return v;
  }

  SacBatch<S> build_higher_batch() {
    const int B = cfg_.batch_size;
    const int d = env_.obs_dim() + 3;
    MatX<S> obs(d, B), obs_next(d, B);
    MatX<S> act(3, B);
    VecX<S> rew(B), mask(B);
    for (int i = 0; i < B; ++i) {
      ++counters_.sample_higher;
      const HigherTrajectory& traj = higher_buf_.sample(rng_update_);
      const SubgoalTransition& t = traj.steps[rng_update_.below(traj.steps.size())];

      Vec3 action = t.g;
      double reward = t.r_h;
      switch (cfg_.mode) {
        case TrainMode::lgr2:
        case TrainMode::lgr2_no_her:
          // Relabel at sample time against the transition's own goal
          // (hindsight copies keep their hindsight goal).
          reward = evaluate_reward(params_, t.s_next.cast<double>(), t.g_star);
          ++counters_.relabel_ops;
          break;
        case TrainMode::hac:
          // Hindsight action: pretend the lower primitive reached exactly
          // what it achieved.
          action = extract_feature(t.s_next.cast<double>(), params_.feature);
          reward = evaluate_reward(params_, t.s_next.cast<double>(), t.g_star);
          break;
        case TrainMode::hier:
          break;  // stored k-step sum, untouched
        case TrainMode::flat_l2r:
          throw StateError("flat mode has no higher level");
      }

      const Vecf gs = t.g_star.cast<float>();
      obs.col(i) = stack_float(t.s, gs);
      obs_next.col(i) = stack_float(t.s_next, gs);
      act.col(i) = action.cast<S>();
      rew[i] = static_cast<S>(reward);
      mask[i] = t.terminal ? S(0) : S(1);
    }
    SacBatch<S> b;
    b.obs = higher_.obs_norm.normalize_batch(obs);
    b.obs_next = higher_.obs_norm.normalize_batch(obs_next);
    b.act = std::move(act);
    b.reward = std::move(rew);
    b.mask = std::move(mask);
    return b;
  }

  std::pair<double, double> lower_gradient_step() {
    const SacBatch<S> batch = build_lower_batch();
    const S closs = update_critics(lower_, batch, rng_update_);
    ++counters_.grad_steps_lower;

    S aloss;
    if (cfg_.use_demo() && !demo_.empty()) {
      BcBatch<S> bc;
      const int Bd = std::min<int>(cfg_.demo_batch, static_cast<int>(demo_.size()));
      MatX<S> dobs(env_.obs_dim() + 3, Bd);
      MatX<S> dact(4, Bd);
      for (int i = 0; i < Bd; ++i) {
        const PrimitiveTransition& t = demo_[rng_update_.below(demo_.size())];
        dobs.col(i) = stack_float(t.s, t.g);
        dact.col(i) = t.a.template cast<S>();
      }
      bc.obs = lower_.obs_norm.normalize_batch(dobs);
      bc.act = std::move(dact);
      bc.weight = static_cast<S>(current_bc_weight());
      aloss = update_actor(lower_, batch, rng_update_, &bc);
    } else {
      aloss = update_actor(lower_, batch, rng_update_);
    }
    ++counters_.grad_steps_lower;
    return {static_cast<double>(closs), static_cast<double>(aloss)};
  }

  std::pair<double, double> higher_gradient_step() {
    const SacBatch<S> batch = build_higher_batch();
    const S closs = update_critics(higher_, batch, rng_update_);
    const S aloss = update_actor(higher_, batch, rng_update_);
    counters_.grad_steps_higher += 2;
    return {static_cast<double>(closs), static_cast<double>(aloss)};
  }

  double current_bc_weight() const {
    const double half = cfg_.episodes / 2.0;
    if (half <= 0) return 0.0;
    const double frac = std::max(0.0, 1.0 - cycle_ / half);
    return cfg_.bc_weight * frac;
  }

  TrainConfig cfg_;
  std::uint64_t seed_;
  Environment env_;
  RewardParams params_;
  SacAgent<S> lower_, higher_;
  LowerBuffer lower_buf_;
  HigherBuffer higher_buf_;
  std::vector<PrimitiveTransition> demo_;
  Rng rng_, rng_init_{0}, rng_collect_{0}, rng_update_{0}, rng_her_{0}, rng_stale_{0};
  OpCounters counters_;
  std::vector<int> phase_trace_;
  int cycle_ = 0;
};

}  // namespace lgr2
