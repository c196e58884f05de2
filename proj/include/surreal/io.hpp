#pragma once

#include "surreal/expr.hpp"

#include <nlohmann/json.hpp>

#include <string>
#include <string_view>

namespace surreal {

/// Parses the text grammar (see docs/grammar.md). Throws ParseError carrying the
/// byte offset and the set of tokens that would have been accepted there.
Expr parse(std::string_view text);

/// Canonical text. Top-level sums are spaced ("w - 1/2"), nested ones are not.
std::string print(const Expr& e);

/// Tagged-union AST export, schema in schema/ast.schema.json.
nlohmann::json to_json(const Expr& e);
Expr from_json(const nlohmann::json& j);

}  // namespace surreal
