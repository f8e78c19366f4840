#include "lgr2/runner.hpp"

#include <filesystem>
#include <iostream>
#include <mutex>
#include <thread>

#include <CLI11.hpp>

#include "lgr2/llm.hpp"

namespace lgr2 {

namespace fs = std::filesystem;

namespace {

std::string checkpoint_path(const RunConfig& cfg, std::uint64_t seed, bool final) {
  return cfg.out_dir + "/ckpt_" + to_string(cfg.train.mode) + "_seed" +
         std::to_string(seed) + (final ? "_final" : "") + ".bin";
}

std::uint64_t eval_seed_for(std::uint64_t seed, int cycle) {
  return seed * 0x9e3779b97f4a7c15ULL + static_cast<std::uint64_t>(cycle) + 1;
}

}  // namespace

SeedResult run_seed(const RunConfig& cfg, std::uint64_t seed,
                    const std::optional<RewardParams>& params_override,
                    bool write_checkpoints) {
  Trainer<float> trainer(cfg.train, seed, params_override);
  const std::string mode = to_string(cfg.train.mode);

  SeedResult result;
  result.seed = seed;

  for (int cycle = 0; cycle < cfg.train.episodes; ++cycle) {
    const CycleMetrics cm = trainer.train_cycle();
    const bool eval_now =
        (cycle + 1) % cfg.eval_every == 0 || cycle + 1 == cfg.train.episodes;
    if (!eval_now) continue;

    const double success = trainer.evaluate(cfg.eval_episodes, eval_seed_for(seed, cycle));
    const double stale_vanilla =
        cfg.staleness_samples > 0 ? trainer.staleness(cfg.staleness_samples) : 0.0;
    const double stale_relabeled =
        cfg.staleness_samples > 0 ? trainer.staleness_relabeled(cfg.staleness_samples)
                                  : 0.0;

    result.curves.push_back(CurveRow{mode, seed, cm.env_steps, success});
    MetricsRow mr;
    mr.mode = mode;
    mr.seed = seed;
    mr.cycle = cycle;
    mr.env_steps = cm.env_steps;
    mr.success_rate_eval = success;
    mr.actor_loss_low = cm.actor_loss_low;
    mr.critic_loss_low = cm.critic_loss_low;
    mr.actor_loss_high = cm.actor_loss_high;
    mr.critic_loss_high = cm.critic_loss_high;
    mr.staleness = stale_vanilla;
    mr.lower_buffer = cm.lower_size;
    mr.higher_buffer = cm.higher_size;
    result.metrics.push_back(mr);
    result.staleness.push_back(
        StalenessRow{mode, seed, cm.env_steps, stale_vanilla, stale_relabeled});
    result.final_success = success;

    if (write_checkpoints) trainer.save(checkpoint_path(cfg, seed, false));
  }
  if (write_checkpoints) trainer.save(checkpoint_path(cfg, seed, true));
  result.gradient_updates =
      trainer.counters().grad_steps_lower + trainer.counters().grad_steps_higher;
  return result;
}

int run(const RunConfig& cfg) {
  cfg.validate();
  fs::create_directories(cfg.out_dir);

  std::optional<RewardParams> params_override;
  if (cfg.translator_backend == TranslatorBackend::llm) {
    // Translate once per run; each seed still validates the goal against
    // its own environment instance.
    const LlmClient client = LlmClient::from_env();
    const Environment probe(cfg.train.env_kind, cfg.train.seeds.front(),
                            Environment::Options{cfg.train.maze_width,
                                                 cfg.train.maze_height});
    const PromptBundle bundle = load_prompt_bundle(cfg.assets_dir, cfg.train.env_kind);
    params_override = translate_via_llm(client, bundle, cfg.train.instruction, probe);
  }

  const std::vector<std::uint64_t>& seeds = cfg.train.seeds;
  std::vector<SeedResult> results(seeds.size());
  std::vector<std::string> errors(seeds.size());

  const unsigned workers =
      std::max(1u, std::min<unsigned>(std::thread::hardware_concurrency(),
                                      static_cast<unsigned>(seeds.size())));
  std::mutex next_mutex;
  std::size_t next = 0;
  auto worker = [&]() {
    while (true) {
      std::size_t i;
      {
        std::lock_guard<std::mutex> lock(next_mutex);
        if (next >= seeds.size()) return;
        i = next++;
      }
      try {
        results[i] = run_seed(cfg, seeds[i], params_override);
      } catch (const std::exception& e) {
        errors[i] = e.what();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
  for (std::thread& t : pool) t.join();

  for (std::size_t i = 0; i < seeds.size(); ++i) {
    if (!errors[i].empty()) {
      std::cerr << "seed " << seeds[i] << " failed: " << errors[i] << "\n";
      return 1;
    }
  }

  std::vector<CurveRow> curves;
  std::vector<MetricsRow> metrics;
  std::vector<StalenessRow> staleness;
  for (const SeedResult& r : results) {
    curves.insert(curves.end(), r.curves.begin(), r.curves.end());
    metrics.insert(metrics.end(), r.metrics.begin(), r.metrics.end());
    staleness.insert(staleness.end(), r.staleness.begin(), r.staleness.end());
  }
  write_curves(cfg.out_dir + "/curves.csv", std::move(curves));
  write_metrics(cfg.out_dir + "/metrics.csv", std::move(metrics));
  write_staleness(cfg.out_dir + "/staleness.csv", std::move(staleness));
  return 0;
}

double run_eval_only(const RunConfig& cfg, const std::string& checkpoint_path,
                     long* gradient_updates) {
  const std::uint64_t seed = cfg.train.seeds.front();
  Trainer<float> trainer(cfg.train, seed);
  trainer.load(checkpoint_path);
  const double success = trainer.evaluate(cfg.eval_episodes, eval_seed_for(seed, -1));
  if (gradient_updates != nullptr)
    *gradient_updates =
        trainer.counters().grad_steps_lower + trainer.counters().grad_steps_higher;
  return success;
}

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"LGR2 trainer: language-guided reward relabeling for hierarchical RL"};

  std::string config_path, mode_str, env_str, instruction, out_dir, eval_ckpt, assets_dir;
  std::vector<std::uint64_t> seeds;
  int episodes = -1;
  bool use_llm = false;

  app.add_option("--config", config_path, "run configuration JSON");
  app.add_option("--mode", mode_str, "lgr2|lgr2_no_her|hier|hac|flat_l2r");
  app.add_option("--seed", seeds, "seed (repeatable; replaces the config's seed list)");
  app.add_option("--env", env_str, "maze|pick_place|bin");
  app.add_option("--instruction", instruction, "natural-language task instruction");
  app.add_option("--out", out_dir, "output directory");
  app.add_option("--episodes", episodes, "training episodes");
  app.add_option("--assets", assets_dir, "prompt template directory");
  app.add_flag("--llm", use_llm, "use the remote LLM translator backend");
  app.add_option("--eval-only", eval_ckpt, "evaluate a checkpoint; no training");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  }

  try {
    RunConfig cfg;
    if (!config_path.empty()) cfg = load_run_config(config_path);
    if (!mode_str.empty()) cfg.train.mode = train_mode_from_string(mode_str);
    if (!env_str.empty()) cfg.train.env_kind = env_kind_from_string(env_str);
    if (!instruction.empty()) cfg.train.instruction = instruction;
    if (!out_dir.empty()) cfg.out_dir = out_dir;
    if (!seeds.empty()) cfg.train.seeds = seeds;
    if (episodes > 0) cfg.train.episodes = episodes;
    if (!assets_dir.empty()) cfg.assets_dir = assets_dir;
    if (use_llm) cfg.translator_backend = TranslatorBackend::llm;
    cfg.validate();
    for (const std::string& w : cfg.train.validate())
      std::cerr << "warning: " << w << "\n";

    if (!eval_ckpt.empty()) {
      const double success = run_eval_only(cfg, eval_ckpt);
      std::cout << "success_rate " << success << "\n";
      return 0;
    }
    return run(cfg);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const GrammarError& e) {
    std::cerr << "instruction error: " << e.what() << "\n";
    return 2;
  } catch (const ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 2;
  } catch (const TranslationError& e) {
    std::cerr << "translation error: " << e.what() << "\nraw response:\n"
              << e.raw_response << "\n";
    return 3;
  } catch (const TransportError& e) {
    std::cerr << "transport error: " << e.what() << "\n";
    return 3;
  } catch (const LoadError& e) {
    std::cerr << "load error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace lgr2
