#pragma once

#include <string>
#include <vector>

#include "lgr2/prompts.hpp"
#include "lgr2/reward.hpp"

namespace lgr2 {

// Remote reward-translator client. Wire format: POST {"prompt": string},
// response {"text": string}. The endpoint and API key come from the
// LGR2_LLM_URL / LGR2_LLM_KEY environment variables.
class LlmClient {
 public:
  explicit LlmClient(std::string endpoint_url, std::string api_key = "");

  static LlmClient from_env();

  // One round trip; retries once on transport failure.
  std::string query(const std::string& prompt) const;

  const std::string& url() const { return url_; }

 private:
  std::string url_;
  std::string host_part_;  // scheme://host:port
  std::string path_;
  std::string api_key_;
};

// All 3-argument set_*_Pos(x, y, z) calls in a response, in order.
std::vector<Vec3> parse_position_calls(const std::string& text);

// Full two-stage translation: motion descriptor first, then the reward
// coder over the motion description. The last position call in the coder
// response becomes the goal; the result passes the same validation as the
// grammar path.
RewardParams translate_via_llm(const LlmClient& client, const PromptBundle& bundle,
                               const std::string& instruction, const Environment& env);

// Parsing/validation tail of translate_via_llm, shared with the recorded
// fixture corpus used in tests.
RewardParams reward_params_from_response(const std::string& response_text,
                                         const Environment& env);

}  // namespace lgr2
