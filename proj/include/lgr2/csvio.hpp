#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lgr2/types.hpp"

namespace lgr2 {

// One evaluation result of one seed.
struct CurveRow {
  std::string mode;
  std::uint64_t seed = 0;
  long env_steps = 0;
  double success = 0.0;
};

// Cross-seed aggregate at one point of the curve; mean and std are always
// recomputable from the per-seed values.
struct CurvePoint {
  long env_steps = 0;
  double mean_success = 0.0;
  double std_success = 0.0;
  std::vector<double> per_seed;
};

struct MetricsRow {
  std::string mode;
  std::uint64_t seed = 0;
  int cycle = 0;
  long env_steps = 0;
  double success_rate_eval = 0.0;
  double actor_loss_low = 0.0, critic_loss_low = 0.0;
  double actor_loss_high = 0.0, critic_loss_high = 0.0;
  double staleness = 0.0;
  std::size_t lower_buffer = 0, higher_buffer = 0;
};

struct StalenessRow {
  std::string mode;
  std::uint64_t seed = 0;
  long env_steps = 0;
  double staleness_vanilla = 0.0;
  double staleness_relabeled = 0.0;
};

inline const char* kCurvesHeader = "mode,seed,env_steps,success";
inline const char* kMetricsHeader =
    "mode,seed,cycle,env_steps,success_rate_eval,actor_loss_low,critic_loss_low,"
    "actor_loss_high,critic_loss_high,staleness,lower_buffer,higher_buffer";
inline const char* kStalenessHeader =
    "mode,seed,env_steps,staleness_vanilla,staleness_relabeled";

void write_curves(const std::string& path, std::vector<CurveRow> rows);
std::vector<CurveRow> load_curves(const std::string& path);

// Groups rows by env_steps (all rows must share one mode) into curve
// points, sorted by env_steps, seeds sorted within a point.
std::vector<CurvePoint> aggregate_curve(const std::vector<CurveRow>& rows);

double mean_of(const std::vector<double>& v);
double std_of(const std::vector<double>& v);  // population standard deviation

void write_metrics(const std::string& path, std::vector<MetricsRow> rows);
void write_staleness(const std::string& path, std::vector<StalenessRow> rows);

}  // namespace lgr2
