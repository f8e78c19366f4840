#include "lgr2/csvio.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>

#include "lgr2/ioutil.hpp"

namespace lgr2 {

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream os(path, std::ios::binary);  // '\n' line endings on every platform
  if (!os) throw LoadError("cannot write " + path);
  return os;
}

// Deterministic row order regardless of which worker finished first.
template <class Row>
void sort_rows(std::vector<Row>& rows) {
  std::stable_sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
    if (a.mode != b.mode) return a.mode < b.mode;
    if (a.seed != b.seed) return a.seed < b.seed;
    return a.env_steps < b.env_steps;
  });
}

}  // namespace

double mean_of(const std::vector<double>& v) {
  if (v.empty()) return 0.0;
  double s = 0.0;
  for (const double x : v) s += x;
  return s / static_cast<double>(v.size());
}

double std_of(const std::vector<double>& v) {
  if (v.size() < 2) return 0.0;
  const double m = mean_of(v);
  double s = 0.0;
  for (const double x : v) s += (x - m) * (x - m);
  return std::sqrt(s / static_cast<double>(v.size()));
}

void write_curves(const std::string& path, std::vector<CurveRow> rows) {
  sort_rows(rows);
  auto os = open_out(path);
  os << kCurvesHeader << '\n';
  for (const CurveRow& r : rows)
    os << r.mode << ',' << r.seed << ',' << r.env_steps << ','
       << format_value(r.success) << '\n';
}

std::vector<CurveRow> load_curves(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw LoadError("cannot read " + path);
  std::string line;
  if (!std::getline(is, line)) throw LoadError("empty curves file");
  if (line != kCurvesHeader) throw LoadError("unexpected curves.csv header: " + line);
  std::vector<CurveRow> rows;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const auto cells = split(line, ',');
    if (cells.size() != 4) throw InputError("curves row has wrong arity: " + line);
    CurveRow r;
    r.mode = cells[0];
    r.seed = static_cast<std::uint64_t>(parse_value(cells[1]));
    r.env_steps = static_cast<long>(parse_value(cells[2]));
    r.success = parse_value(cells[3]);
    rows.push_back(std::move(r));
  }
  return rows;
}

std::vector<CurvePoint> aggregate_curve(const std::vector<CurveRow>& rows) {
  if (rows.empty()) return {};
  const std::string& mode = rows.front().mode;
  std::map<long, std::vector<std::pair<std::uint64_t, double>>> by_steps;
  for (const CurveRow& r : rows) {
    if (r.mode != mode)
      throw InputError("aggregate_curve expects rows from a single mode");
    by_steps[r.env_steps].emplace_back(r.seed, r.success);
  }
  std::vector<CurvePoint> out;
  out.reserve(by_steps.size());
  for (auto& [steps, seeds] : by_steps) {
    std::sort(seeds.begin(), seeds.end());
    CurvePoint p;
    p.env_steps = steps;
    for (const auto& [seed, success] : seeds) p.per_seed.push_back(success);
    p.mean_success = mean_of(p.per_seed);
    p.std_success = std_of(p.per_seed);
    out.push_back(std::move(p));
  }
  return out;
}

void write_metrics(const std::string& path, std::vector<MetricsRow> rows) {
  std::stable_sort(rows.begin(), rows.end(), [](const MetricsRow& a, const MetricsRow& b) {
    if (a.mode != b.mode) return a.mode < b.mode;
    if (a.seed != b.seed) return a.seed < b.seed;
    return a.cycle < b.cycle;
  });
  auto os = open_out(path);
  os << kMetricsHeader << '\n';
  for (const MetricsRow& r : rows) {
    os << r.mode << ',' << r.seed << ',' << r.cycle << ',' << r.env_steps << ','
       << format_value(r.success_rate_eval) << ',' << format_value(r.actor_loss_low)
       << ',' << format_value(r.critic_loss_low) << ','
       << format_value(r.actor_loss_high) << ',' << format_value(r.critic_loss_high)
       << ',' << format_value(r.staleness) << ',' << r.lower_buffer << ','
       << r.higher_buffer << '\n';
  }
}

void write_staleness(const std::string& path, std::vector<StalenessRow> rows) {
  sort_rows(rows);
  auto os = open_out(path);
  os << kStalenessHeader << '\n';
  for (const StalenessRow& r : rows)
    os << r.mode << ',' << r.seed << ',' << r.env_steps << ','
       << format_value(r.staleness_vanilla) << ','
       << format_value(r.staleness_relabeled) << '\n';
}

}  // namespace lgr2
