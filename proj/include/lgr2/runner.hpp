#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lgr2/config.hpp"
#include "lgr2/csvio.hpp"

namespace lgr2 {

struct SeedResult {
  std::uint64_t seed = 0;
  std::vector<CurveRow> curves;
  std::vector<MetricsRow> metrics;
  std::vector<StalenessRow> staleness;
  double final_success = 0.0;
  long gradient_updates = 0;
};

// Trains one seed to completion (float scalar), evaluating every
// eval_every cycles; writes the seed's checkpoints under cfg.out_dir.
SeedResult run_seed(const RunConfig& cfg, std::uint64_t seed,
                    const std::optional<RewardParams>& params_override = std::nullopt,
                    bool write_checkpoints = true);

// Full run: fans seeds out to parallel workers, then writes curves.csv,
// metrics.csv and staleness.csv (deterministic row order). Returns the
// process exit code.
int run(const RunConfig& cfg);

// Loads a checkpoint and evaluates it without a single gradient update.
// Returns the success rate.
double run_eval_only(const RunConfig& cfg, const std::string& checkpoint_path,
                     long* gradient_updates = nullptr);

// Flag parsing + dispatch for the lgr2 binary.
int run_cli(int argc, const char* const* argv);

}  // namespace lgr2
