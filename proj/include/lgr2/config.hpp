#pragma once

#include <string>
#include <vector>

#include "lgr2/trainer.hpp"

namespace lgr2 {

enum class TranslatorBackend { grammar, llm };

// Everything a run needs: the training configuration plus output location,
// evaluation cadence and translator backend. Loaded from a versioned JSON
// file; unknown keys are rejected.
struct RunConfig {
  TrainConfig train;
  std::string out_dir = "runs/out";
  int eval_every = 10;     // cycles between evaluations
  int eval_episodes = 20;
  TranslatorBackend translator_backend = TranslatorBackend::grammar;
  std::string assets_dir = "assets/prompts";
  int staleness_samples = 64;

  void validate() const;
};

RunConfig run_config_from_json(const std::string& json_text);
RunConfig load_run_config(const std::string& path);
std::string run_config_to_json(const RunConfig& cfg);

}  // namespace lgr2
