#include "lgr2/config.hpp"

#include <set>

#include <nlohmann/json.hpp>

#include "lgr2/prompts.hpp"

namespace lgr2 {

using nlohmann::json;

void RunConfig::validate() const {
  train.validate();
  if (eval_every < 1) throw ConfigError("eval_every must be >= 1");
  if (eval_episodes < 1) throw ConfigError("eval_episodes must be >= 1");
  if (out_dir.empty()) throw ConfigError("out_dir must not be empty");
  if (staleness_samples < 0) throw ConfigError("staleness_samples must be >= 0");
}

namespace {

const std::set<std::string>& allowed_keys() {
  static const std::set<std::string> keys = {
      "version",      "env",          "mode",         "instruction",
      "seeds",        "episodes",     "horizon",      "k",
      "her_count",    "relabel_batch", "n_batches",   "batch_size",
      "layers",       "hidden",       "q_lr",         "pi_lr",
      "alpha",        "tau",          "gamma",        "random_eps",
      "noise_eps",    "norm_eps",     "norm_clip",    "clip_obs",
      "buffer_lower", "buffer_higher", "lower_her_k", "demo",
      "bc_weight",    "demo_batch",   "epsilon",      "maze_width",
      "maze_height",  "out_dir",      "eval_every",   "eval_episodes",
      "translator",   "assets_dir",   "staleness_samples"};
  return keys;
}

template <class T>
void read(const json& j, const char* key, T& into) {
  if (j.contains(key)) into = j.at(key).get<T>();
}

}  // namespace

RunConfig run_config_from_json(const std::string& json_text) {
  json j = json::parse(json_text, nullptr, false);
  if (j.is_discarded()) throw ConfigError("config is not valid JSON");
  if (!j.is_object()) throw ConfigError("config must be a JSON object");

  for (const auto& [key, value] : j.items())
    if (allowed_keys().count(key) == 0)
      throw ConfigError("unknown config key '" + key + "'");

  if (!j.contains("version")) throw ConfigError("config is missing 'version'");
  if (j.at("version").get<int>() != 1)
    throw ConfigError("unsupported config version (expected 1)");

  RunConfig cfg;
  TrainConfig& t = cfg.train;
  try {
    if (j.contains("env")) t.env_kind = env_kind_from_string(j.at("env").get<std::string>());
    if (j.contains("mode")) t.mode = train_mode_from_string(j.at("mode").get<std::string>());
    read(j, "instruction", t.instruction);
    read(j, "seeds", t.seeds);
    read(j, "episodes", t.episodes);
    read(j, "horizon", t.horizon);
    read(j, "k", t.k);
    read(j, "her_count", t.her_count);
    read(j, "relabel_batch", t.relabel_batch);
    read(j, "n_batches", t.n_batches);
    read(j, "batch_size", t.batch_size);
    read(j, "layers", t.layers);
    read(j, "hidden", t.hidden);
    read(j, "q_lr", t.q_lr);
    read(j, "pi_lr", t.pi_lr);
    read(j, "alpha", t.alpha);
    read(j, "tau", t.tau);
    read(j, "gamma", t.gamma);
    read(j, "random_eps", t.random_eps);
    read(j, "noise_eps", t.noise_eps);
    read(j, "norm_eps", t.norm_eps);
    read(j, "norm_clip", t.norm_clip);
    read(j, "clip_obs", t.clip_obs);
    read(j, "buffer_lower", t.buffer_lower);
    read(j, "buffer_higher", t.buffer_higher);
    read(j, "lower_her_k", t.lower_her_k);
    if (j.contains("demo")) {
      const auto& d = j.at("demo");
      if (d.is_string() && d.get<std::string>() == "auto") {
        t.demo_enabled.reset();
      } else if (d.is_boolean()) {
        t.demo_enabled = d.get<bool>();
      } else {
        throw ConfigError("'demo' must be true, false or \"auto\"");
      }
    }
    read(j, "bc_weight", t.bc_weight);
    read(j, "demo_batch", t.demo_batch);
    read(j, "epsilon", t.epsilon);
    read(j, "maze_width", t.maze_width);
    read(j, "maze_height", t.maze_height);

    read(j, "out_dir", cfg.out_dir);
    read(j, "eval_every", cfg.eval_every);
    read(j, "eval_episodes", cfg.eval_episodes);
    if (j.contains("translator")) {
      const std::string b = j.at("translator").get<std::string>();
      if (b == "grammar") cfg.translator_backend = TranslatorBackend::grammar;
      else if (b == "llm") cfg.translator_backend = TranslatorBackend::llm;
      else throw ConfigError("translator must be 'grammar' or 'llm'");
    }
    read(j, "assets_dir", cfg.assets_dir);
    read(j, "staleness_samples", cfg.staleness_samples);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed config value: ") + e.what());
  }
  cfg.validate();
  return cfg;
}

RunConfig load_run_config(const std::string& path) {
  return run_config_from_json(read_text_file(path));
}

std::string run_config_to_json(const RunConfig& cfg) {
  const TrainConfig& t = cfg.train;
  json j;
  j["version"] = 1;
  j["env"] = to_string(t.env_kind);
  j["mode"] = to_string(t.mode);
  j["instruction"] = t.instruction;
  j["seeds"] = t.seeds;
  j["episodes"] = t.episodes;
  j["horizon"] = t.horizon;
  j["k"] = t.k;
  j["her_count"] = t.her_count;
  j["relabel_batch"] = t.relabel_batch;
  j["n_batches"] = t.n_batches;
  j["batch_size"] = t.batch_size;
  j["layers"] = t.layers;
  j["hidden"] = t.hidden;
  j["q_lr"] = t.q_lr;
  j["pi_lr"] = t.pi_lr;
  j["alpha"] = t.alpha;
  j["tau"] = t.tau;
  j["gamma"] = t.gamma;
  j["random_eps"] = t.random_eps;
  j["noise_eps"] = t.noise_eps;
  j["norm_eps"] = t.norm_eps;
  j["norm_clip"] = t.norm_clip;
  j["clip_obs"] = t.clip_obs;
  j["buffer_lower"] = t.buffer_lower;
  j["buffer_higher"] = t.buffer_higher;
  j["lower_her_k"] = t.lower_her_k;
  if (t.demo_enabled) j["demo"] = *t.demo_enabled;
  else j["demo"] = "auto";
  j["bc_weight"] = t.bc_weight;
  j["demo_batch"] = t.demo_batch;
  j["epsilon"] = t.epsilon;
  j["maze_width"] = t.maze_width;
  j["maze_height"] = t.maze_height;
  j["out_dir"] = cfg.out_dir;
  j["eval_every"] = cfg.eval_every;
  j["eval_episodes"] = cfg.eval_episodes;
  j["translator"] =
      cfg.translator_backend == TranslatorBackend::grammar ? "grammar" : "llm";
  j["assets_dir"] = cfg.assets_dir;
  j["staleness_samples"] = cfg.staleness_samples;
  return j.dump(2);
}

}  // namespace lgr2
