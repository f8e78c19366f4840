#pragma once

#include <stdexcept>
#include <string>

namespace lgr2 {

// Error taxonomy. Every failure mode surfaces as one of these so callers
// (CLI, tests) can map them to exit codes and messages.

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct StateError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InternalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Instruction text did not match the grammar. Carries the byte offset of
// the first token that failed to parse.
struct GrammarError : std::runtime_error {
  GrammarError(const std::string& what, std::size_t position)
      : std::runtime_error(what + " (at position " + std::to_string(position) + ")"),
        position(position) {}
  std::size_t position;
};

struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct TemplateError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct TransportError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// LLM responded but the response could not be turned into valid reward
// parameters. Keeps the raw response for logging.
struct TranslationError : std::runtime_error {
  TranslationError(const std::string& what, std::string raw)
      : std::runtime_error(what), raw_response(std::move(raw)) {}
  std::string raw_response;
};

struct LoadError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace lgr2
