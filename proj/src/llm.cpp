#include "lgr2/llm.hpp"

#include <cstdlib>
#include <regex>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "lgr2/translate.hpp"

namespace lgr2 {

using nlohmann::json;

LlmClient::LlmClient(std::string endpoint_url, std::string api_key)
    : url_(std::move(endpoint_url)), api_key_(std::move(api_key)) {
  const std::size_t scheme = url_.find("://");
  if (scheme == std::string::npos) throw ConfigError("endpoint URL must include a scheme");
  const std::size_t path_start = url_.find('/', scheme + 3);
  if (path_start == std::string::npos) {
    host_part_ = url_;
    path_ = "/";
  } else {
    host_part_ = url_.substr(0, path_start);
    path_ = url_.substr(path_start);
  }
}

LlmClient LlmClient::from_env() {
  const char* url = std::getenv("LGR2_LLM_URL");
  if (url == nullptr || *url == '\0')
    throw ConfigError("LGR2_LLM_URL is not set; the LLM backend needs an endpoint");
  const char* key = std::getenv("LGR2_LLM_KEY");
  return LlmClient(url, key ? key : "");
}

std::string LlmClient::query(const std::string& prompt) const {
  json body;
  body["prompt"] = prompt;
  const std::string payload = body.dump();

  httplib::Headers headers;
  if (!api_key_.empty()) headers.emplace("Authorization", "Bearer " + api_key_);

  std::string last_error;
  for (int attempt = 0; attempt < 2; ++attempt) {
    httplib::Client cli(host_part_);
    cli.set_connection_timeout(5, 0);
    cli.set_read_timeout(30, 0);
    auto res = cli.Post(path_, headers, payload, "application/json");
    if (!res) {
      last_error = httplib::to_string(res.error());
      continue;
    }
    if (res->status != 200) {
      last_error = "HTTP status " + std::to_string(res->status);
      continue;
    }
    json reply = json::parse(res->body, nullptr, false);
    if (reply.is_discarded() || !reply.contains("text") || !reply["text"].is_string())
      throw TranslationError("endpoint reply is not a {\"text\": ...} object", res->body);
    return reply["text"].get<std::string>();
  }
  throw TransportError("LLM endpoint unreachable: " + last_error);
}

std::vector<Vec3> parse_position_calls(const std::string& text) {
  static const std::regex call(
      R"(set_[A-Za-z_]*Pos\s*\(\s*([-+0-9.eE]+)\s*,\s*([-+0-9.eE]+)\s*,\s*([-+0-9.eE]+)\s*\))");
  std::vector<Vec3> out;
  for (auto it = std::sregex_iterator(text.begin(), text.end(), call);
       it != std::sregex_iterator(); ++it) {
    try {
      out.emplace_back(std::stod((*it)[1].str()), std::stod((*it)[2].str()),
                       std::stod((*it)[3].str()));
    } catch (const std::exception&) {
      // Not a numeric call (e.g. the function definition line); skip.
    }
  }
  return out;
}

RewardParams reward_params_from_response(const std::string& response_text,
                                         const Environment& env) {
  const std::vector<Vec3> calls = parse_position_calls(response_text);
  if (calls.empty())
    throw TranslationError("response contains no set_*_Pos(x, y, z) call", response_text);

  RewardParams p;
  p.env_kind = env.kind();
  p.feature = default_feature(env.kind());
  p.tolerance = env.epsilon();
  p.source = TranslatorSource::llm;
  try {
    // Intermediate calls are waypoints; the final one is the goal.
    p.goal = project_goal(calls.back(), env);
    validate_reward_params(p, env);
  } catch (const ValidationError& e) {
    throw TranslationError(std::string("translated goal rejected: ") + e.what(),
                           response_text);
  }
  return p;
}

RewardParams translate_via_llm(const LlmClient& client, const PromptBundle& bundle,
                               const std::string& instruction, const Environment& env) {
  const RenderedPrompts prompts = render_prompts(bundle, instruction, env);
  const std::string motion_description = client.query(prompts.motion);
  const std::string code =
      client.query(prompts.coder + "\n[Motion Description]\n" + motion_description + "\n");
  return reward_params_from_response(code, env);
}

}  // namespace lgr2
