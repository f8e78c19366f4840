#include "lgr2/prompts.hpp"

#include <fstream>
#include <regex>
#include <sstream>

namespace lgr2 {

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LoadError("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

PromptBundle load_prompt_bundle(const std::string& assets_dir, EnvKind kind) {
  PromptBundle b;
  b.env_kind = kind;
  const std::string base = assets_dir + "/" + to_string(kind);
  b.motion_template = read_text_file(base + "_motion.txt");
  b.coder_template = read_text_file(base + "_coder.txt");
  return b;
}

namespace {

void replace_all(std::string& s, const std::string& from, const std::string& to) {
  std::size_t pos = 0;
  while ((pos = s.find(from, pos)) != std::string::npos) {
    s.replace(pos, from.size(), to);
    pos += to.size();
  }
}

std::string format_num(double v) {
  std::ostringstream ss;
  ss << v;
  return ss.str();
}

// CHOICE:[a,b,...] and CHOICE: [a, b, ...] both collapse to their first
// entry.
void expand_choices(std::string& s) {
  static const std::regex re(R"(CHOICE:\s*\[([^\]\[]*)\])");
  std::smatch m;
  while (std::regex_search(s, m, re)) {
    std::string first = m[1].str();
    const std::size_t comma = first.find(',');
    if (comma != std::string::npos) first = first.substr(0, comma);
    while (!first.empty() && first.front() == ' ') first.erase(first.begin());
    while (!first.empty() && first.back() == ' ') first.pop_back();
    s.replace(static_cast<std::size_t>(m.position(0)), static_cast<std::size_t>(m.length(0)),
              first);
  }
}

std::string render_template(const std::string& tmpl, const Environment& env) {
  const Workspace& ws = env.workspace();
  const int w = static_cast<int>(ws.x_max);
  const int h = static_cast<int>(ws.y_max);
  std::string out = tmpl;
  replace_all(out, "num_1", std::to_string(w));
  replace_all(out, "num_2", std::to_string(h));
  replace_all(out, "num_3", format_num(ws.table_height));
  replace_all(out, "num_4", std::to_string(1));
  replace_all(out, "num_5", std::to_string(std::min(w, h) - 2));
  replace_all(out, "num_6", format_num(Environment::kPickGoalHeight));
  expand_choices(out);

  static const std::regex leftover(R"(num_\d+|CHOICE:)");
  std::smatch m;
  if (std::regex_search(out, m, leftover))
    throw TemplateError("unexpanded slot '" + m[0].str() + "' after rendering");
  return out;
}

}  // namespace

RenderedPrompts render_prompts(const PromptBundle& bundle, const std::string& instruction,
                               const Environment& env) {
  if (bundle.env_kind != env.kind())
    throw TemplateError("prompt bundle does not match the environment kind");
  RenderedPrompts r;
  r.motion = render_template(bundle.motion_template, env);
  r.motion += "\n[Instruction]\n" + instruction + "\n";
  r.coder = render_template(bundle.coder_template, env);
  return r;
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const char c : bytes) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace lgr2
