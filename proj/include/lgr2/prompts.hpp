#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "lgr2/env.hpp"
#include "lgr2/types.hpp"

namespace lgr2 {

// The two L2R prompt templates for one environment. Templates carry
// num_1..num_6 slots and CHOICE:[...] lists that rendering expands.
struct PromptBundle {
  std::string motion_template;
  std::string coder_template;
  EnvKind env_kind = EnvKind::maze;
};

struct RenderedPrompts {
  std::string motion;  // slot-expanded motion descriptor + the instruction
  std::string coder;   // slot-expanded reward-coder preamble
};

std::string read_text_file(const std::string& path);

// Loads <dir>/<env>_motion.txt and <dir>/<env>_coder.txt.
PromptBundle load_prompt_bundle(const std::string& assets_dir, EnvKind kind);

// Expands every slot against the environment (num_1/num_2 = table grid
// dims, num_3 = table height, num_4/num_5 = interior coordinate range,
// num_6 = goal hover height) and every CHOICE list to its first entry.
// Throws TemplateError if any slot survives rendering.
RenderedPrompts render_prompts(const PromptBundle& bundle, const std::string& instruction,
                               const Environment& env);

// FNV-1a 64-bit, used to pin the golden template files.
std::uint64_t fnv1a64(std::string_view bytes);

}  // namespace lgr2
