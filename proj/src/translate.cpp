#include "lgr2/translate.hpp"

#include <algorithm>
#include <cctype>
#include <optional>
#include <vector>

namespace lgr2 {

namespace {

struct Token {
  std::string text;
  std::size_t pos = 0;
};

std::vector<Token> tokenize(const std::string& s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    const char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (c == '(' || c == ')' || c == ',') {
      out.push_back({std::string(1, c), i});
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j])) &&
           s[j] != '(' && s[j] != ')' && s[j] != ',')
      ++j;
    std::string word = s.substr(i, j - i);
    std::transform(word.begin(), word.end(), word.begin(),
                   [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
    out.push_back({word, i});
    i = j;
  }
  return out;
}

class Parser {
 public:
  Parser(const std::string& text, const Environment& env)
      : text_(text), env_(env), toks_(tokenize(text)) {}

  RewardParams run() {
    RewardParams p;
    p.env_kind = env_.kind();
    p.feature = default_feature(env_.kind());
    p.tolerance = env_.epsilon();
    p.source = TranslatorSource::grammar;

    expect_verb();
    skip_until_preposition();
    const Target t = parse_target();

    std::optional<double> z = t.z;
    if (accept("at")) {
      expect("table");
      expect("height");
      z = env_.workspace().table_height;
    }
    if (accept("tolerance")) p.tolerance = parse_number("tolerance value");
    if (!at_end()) fail("unexpected trailing input");
    if (!(p.tolerance > 0.0)) throw ValidationError("tolerance must be positive");

    Vec3 goal(t.x, t.y, z.value_or(default_goal_height()));
    p.goal = project_goal(goal, env_);
    validate_reward_params(p, env_);
    return p;
  }

 private:
  struct Target {
    double x = 0, y = 0;
    std::optional<double> z;
  };

  double default_goal_height() const {
    switch (env_.kind()) {
      case EnvKind::pick_place: return Environment::kPickGoalHeight;
      default: return env_.workspace().table_height;
    }
  }

  [[noreturn]] void fail(const std::string& msg) const {
    const std::size_t pos = idx_ < toks_.size() ? toks_[idx_].pos : text_.size();
    throw GrammarError(msg, pos);
  }

  bool at_end() const { return idx_ >= toks_.size(); }
  const std::string& peek() const {
    static const std::string empty;
    return at_end() ? empty : toks_[idx_].text;
  }
  bool accept(const std::string& w) {
    if (!at_end() && toks_[idx_].text == w) {
      ++idx_;
      return true;
    }
    return false;
  }
  void expect(const std::string& w) {
    if (!accept(w)) fail("expected '" + w + "'");
  }

  void expect_verb() {
    static const std::vector<std::string> verbs = {"move", "navigate", "place", "put", "go"};
    if (at_end() || std::find(verbs.begin(), verbs.end(), peek()) == verbs.end())
      fail("instruction must start with move/navigate/place");
    ++idx_;
  }

  // Object words between the verb and the to/at preposition are free-form
  // ("the block", "it") and carry no reward information.
  void skip_until_preposition() {
    while (!at_end() && peek() != "to" && peek() != "at") {
      if (peek() == "(") fail("expected 'to' or 'at' before the target");
      ++idx_;
    }
    if (at_end()) fail("expected 'to <target>'");
    ++idx_;
  }

  double parse_number(const std::string& what) {
    if (at_end()) fail("expected " + what);
    const Token& t = toks_[idx_];
    std::size_t consumed = 0;
    double v = 0;
    try {
      v = std::stod(t.text, &consumed);
    } catch (const std::exception&) {
      fail("expected " + what);
    }
    if (consumed != t.text.size()) fail("expected " + what);
    ++idx_;
    return v;
  }

  Target parse_target() {
    accept("the");
    if (accept("(")) {
      Target t;
      t.x = parse_number("x coordinate");
      expect(",");
      t.y = parse_number("y coordinate");
      if (accept(",")) t.z = parse_number("z coordinate");
      expect(")");
      return t;
    }
    if (accept("bottom")) {
      expect("right");
      expect("corner");
      return corner_target();
    }
    if (accept("bin")) {
      if (!accept("center") && !accept("centre")) fail("expected 'bin center'");
      if (env_.kind() != EnvKind::bin)
        throw ValidationError("'bin center' is only meaningful in the bin environment");
      const Vec3 c = env_.bin_center();
      return Target{c.x(), c.y(), c.z()};
    }
    fail("expected a coordinate tuple or a named landmark");
  }

  Target corner_target() {
    if (env_.kind() == EnvKind::maze) {
      // Innermost free cell of the bottom-right region; never a wall or
      // gate by construction of the wall indices.
      const MazeSpec& m = env_.maze();
      const Vec3 c = cell_center(m, Cell{m.width - 2, 1});
      return Target{c.x(), c.y(), c.z()};
    }
    const Workspace& ws = env_.workspace();
    return Target{ws.x_max - 1.5, 1.5, std::nullopt};
  }

  const std::string& text_;
  const Environment& env_;
  std::vector<Token> toks_;
  std::size_t idx_ = 0;
};

}  // namespace

Vec3 project_goal(const Vec3& goal, const Environment& env) {
  const Workspace& ws = env.workspace();
  if (goal.z() > ws.max_height + 1e-12)
    throw ValidationError("goal height exceeds the arm's maximum reach");
  if (goal.z() < ws.table_height - 1e-12)
    throw ValidationError("goal height is below the table");
  Vec3 g = goal;
  if (env.kind() == EnvKind::maze) g.z() = ws.table_height;
  return g;
}

RewardParams parse_instruction(const std::string& text, const Environment& env) {
  return Parser(text, env).run();
}

}  // namespace lgr2
