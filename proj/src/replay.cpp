#include "lgr2/replay.hpp"

#include <fstream>

#include "lgr2/ioutil.hpp"

namespace lgr2 {

std::vector<Vec3> HigherTrajectory::achieved_states(FeatureSelector f) const {
  std::vector<Vec3> out;
  out.reserve(steps.size());
  for (const SubgoalTransition& t : steps)
    out.push_back(extract_feature(t.s_next.cast<double>(), f));
  return out;
}

void push_lower(LowerBuffer& buffer, PrimitiveTransition t) {
  if (t.s.size() != t.s_next.size() || t.g.size() != 3 || t.a.size() != 4)
    throw InputError("primitive transition has inconsistent dimensions");
  buffer.push(std::move(t));
}

void push_higher(HigherBuffer& buffer, HigherTrajectory trajectory) {
  for (const SubgoalTransition& t : trajectory.steps)
    if (t.s.size() != t.s_next.size())
      throw InputError("subgoal transition has inconsistent dimensions");
  buffer.push(std::move(trajectory));
}

namespace {

void check_goal_consistency(const SubgoalTransition& t, const RewardParams& params) {
  if ((t.g_star - params.goal).norm() > 1e-5)
    throw InputError(
        "relabel_language: transition goal differs from the reward parameters' goal");
}

}  // namespace

void relabel_language(std::vector<SubgoalTransition>& batch, const RewardParams& params) {
  for (SubgoalTransition& t : batch) {
    check_goal_consistency(t, params);
    t.r_h = evaluate_reward(params, t.s_next.cast<double>());
    t.relabeled = true;
  }
}

void relabel_language(HigherTrajectory& trajectory, const RewardParams& params) {
  relabel_language(trajectory.steps, params);
}

void relabel_against_stored_goals(std::vector<SubgoalTransition>& batch,
                                  const RewardParams& params) {
  for (SubgoalTransition& t : batch) {
    t.r_h = evaluate_reward(params, t.s_next.cast<double>(), t.g_star);
    t.relabeled = true;
  }
}

std::vector<HigherTrajectory> her_relabel(const HigherTrajectory& trajectory,
                                          const RewardParams& params, HerStrategy strategy,
                                          int count, Rng& rng) {
  if (trajectory.steps.empty())
    throw InputError("her_relabel: trajectory has no transitions");
  if (count < 1) throw InputError("her_relabel: count must be >= 1");

  const std::vector<Vec3> achieved = trajectory.achieved_states(params.feature);
  std::vector<HigherTrajectory> out;
  out.reserve(count);
  for (int c = 0; c < count; ++c) {
    const Vec3 new_goal = strategy == HerStrategy::final
                              ? achieved.back()
                              : achieved[rng.below(achieved.size())];
    HigherTrajectory copy = trajectory;
    for (SubgoalTransition& t : copy.steps) {
      t.g_star = new_goal;
      t.r_h = evaluate_reward(params, t.s_next.cast<double>(), new_goal);
      t.relabeled = true;
    }
    out.push_back(std::move(copy));
  }
  return out;
}

namespace {

constexpr char kRecordMagic[] = "# lgr2-records v1";

void write_vec(std::ostream& os, const Vecf& v) {
  for (int i = 0; i < v.size(); ++i)
    os << ',' << format_value(static_cast<double>(v[i]));
}

void write_vec3(std::ostream& os, const Vec3& v) {
  for (int i = 0; i < 3; ++i) os << ',' << format_value(v[i]);
}

struct RowReader {
  const std::vector<std::string>& cells;
  std::size_t idx = 0;
  double next() {
    if (idx >= cells.size()) throw InputError("record row too short");
    return parse_value(cells[idx++]);
  }
  Vecf next_vec(int n) {
    Vecf v(n);
    for (int i = 0; i < n; ++i) v[i] = static_cast<float>(next());
    return v;
  }
  Vec3 next_vec3() {
    Vec3 v;
    for (int i = 0; i < 3; ++i) v[i] = next();
    return v;
  }
};

struct Header {
  std::string schema;
  EnvKind kind;
  int s_dim;
};

Header parse_header(const std::string& line) {
  const auto fields = split(line, ' ');
  if (fields.size() < 6 || line.rfind(kRecordMagic, 0) != 0)
    throw LoadError("not an lgr2 record file");
  Header h{};
  bool have_schema = false, have_env = false, have_dim = false;
  for (const std::string& f : fields) {
    const std::size_t eq = f.find('=');
    if (eq == std::string::npos) continue;
    const std::string key = f.substr(0, eq), val = f.substr(eq + 1);
    if (key == "schema") h.schema = val, have_schema = true;
    if (key == "env") h.kind = env_kind_from_string(val), have_env = true;
    if (key == "s_dim") h.s_dim = static_cast<int>(parse_value(val)), have_dim = true;
  }
  if (!have_schema || !have_env || !have_dim)
    throw LoadError("record header is missing schema/env/s_dim");
  return h;
}

}  // namespace

void save_transitions(const std::string& path, const std::vector<PrimitiveTransition>& ts,
                      EnvKind kind) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw LoadError("cannot write " + path);
  const int s_dim = ts.empty() ? 0 : static_cast<int>(ts.front().s.size());
  os << kRecordMagic << " schema=primitive env=" << to_string(kind) << " s_dim=" << s_dim
     << " g_dim=3 a_dim=4\n";
  for (const PrimitiveTransition& t : ts) {
    os << format_value(t.r_l) << ',' << format_value(t.env_reward) << ','
       << (t.terminal ? 1 : 0);
    write_vec(os, t.g);
    write_vec(os, t.a);
    write_vec(os, t.s);
    write_vec(os, t.s_next);
    os << '\n';
  }
}

std::pair<std::vector<PrimitiveTransition>, EnvKind> load_transitions(
    const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw LoadError("cannot read " + path);
  std::string line;
  if (!std::getline(is, line)) throw LoadError("empty record file");
  const Header h = parse_header(line);
  if (h.schema != "primitive") throw LoadError("expected schema=primitive");

  std::vector<PrimitiveTransition> out;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const auto cells = split(line, ',');
    RowReader r{cells};
    PrimitiveTransition t;
    t.r_l = r.next();
    t.env_reward = r.next();
    t.terminal = r.next() != 0.0;
    t.g = r.next_vec(3);
    t.a = r.next_vec(4);
    t.s = r.next_vec(h.s_dim);
    t.s_next = r.next_vec(h.s_dim);
    out.push_back(std::move(t));
  }
  return {std::move(out), h.kind};
}

void save_higher_buffer(const std::string& path, const HigherBuffer& buffer, EnvKind kind) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw LoadError("cannot write " + path);
  int s_dim = 0;
  if (!buffer.empty() && !buffer.at(0).steps.empty())
    s_dim = static_cast<int>(buffer.at(0).steps.front().s.size());
  os << kRecordMagic << " schema=subgoal env=" << to_string(kind) << " s_dim=" << s_dim
     << " g_dim=3 a_dim=3\n";
  for (std::size_t i = 0; i < buffer.size(); ++i) {
    for (const SubgoalTransition& t : buffer.at(i).steps) {
      os << i << ',' << format_value(t.r_h) << ',' << (t.relabeled ? 1 : 0) << ','
         << (t.terminal ? 1 : 0);
      write_vec3(os, t.g_star);
      write_vec3(os, t.g);
      write_vec(os, t.s);
      write_vec(os, t.s_next);
      os << '\n';
    }
  }
}

std::pair<std::vector<HigherTrajectory>, EnvKind> load_higher_trajectories(
    const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw LoadError("cannot read " + path);
  std::string line;
  if (!std::getline(is, line)) throw LoadError("empty record file");
  const Header h = parse_header(line);
  if (h.schema != "subgoal") throw LoadError("expected schema=subgoal");

  std::vector<HigherTrajectory> out;
  long last_id = -1;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const auto cells = split(line, ',');
    RowReader r{cells};
    const long id = static_cast<long>(r.next());
    SubgoalTransition t;
    t.r_h = r.next();
    t.relabeled = r.next() != 0.0;
    t.terminal = r.next() != 0.0;
    t.g_star = r.next_vec3();
    t.g = r.next_vec3();
    t.s = r.next_vec(h.s_dim);
    t.s_next = r.next_vec(h.s_dim);
    if (id != last_id) {
      out.emplace_back();
      last_id = id;
    }
    out.back().steps.push_back(std::move(t));
  }
  return {std::move(out), h.kind};
}

}  // namespace lgr2
