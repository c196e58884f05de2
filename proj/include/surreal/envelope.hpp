#pragma once

#include "surreal/expr.hpp"

#include <nlohmann/json.hpp>

#include <cstddef>
#include <string>
#include <vector>

namespace surreal {

/// Result record shared by the CLI and the golden runner (schema/envelope.schema.json).
struct Envelope {
  std::string input;
  Expr result;
  bool exact = true;
  std::vector<std::string> diagnostics;
  /// Verb-specific extras (e.g. "refined", "valid_from"), copied into the JSON as-is.
  nlohmann::json extra = nlohmann::json::object();
};

/// JSON form; `parts` is filled from the expansion of the result at `order`, or null
/// with a diagnostic when the result has no expansion.
nlohmann::json to_json(const Envelope& env, std::size_t order);

/// Aligned "key  value" lines for --verbose.
std::string to_text(const Envelope& env, std::size_t order);

}  // namespace surreal
