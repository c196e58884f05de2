#include "surreal/envelope.hpp"

#include "surreal/asymptotics.hpp"
#include "surreal/errors.hpp"
#include "surreal/io.hpp"

#include <algorithm>
#include <sstream>

namespace surreal {

namespace {

struct PartsText {
  bool ok = false;
  std::string infinite, finite, infinitesimal, error;
  bool truncated = false;
};

PartsText parts_of(const Expr& e, std::size_t order) {
  PartsText p;
  try {
    NormalForm nf = asymptotic_expansion(e, order);
    SurrealParts parts = split(nf);
    p.infinite = print(parts.infinite.to_expr());
    p.finite = print(parts.finite);
    p.infinitesimal = print(parts.infinitesimal.to_expr());
    p.truncated = nf.truncated;
    p.ok = true;
  } catch (const Error& err) {
    p.error = std::string("no expansion: ") + err.what();
  }
  return p;
}

std::string json_scalar_text(const nlohmann::json& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

}  // namespace

nlohmann::json to_json(const Envelope& env, std::size_t order) {
  nlohmann::json j;
  j["input_echo"] = env.input;
  j["result"] = print(env.result);
  j["ast"] = to_json(env.result);
  j["exact"] = env.exact;
  std::vector<std::string> diagnostics = env.diagnostics;
  PartsText p = parts_of(env.result, order);
  if (p.ok) {
    j["parts"] = {{"infinite", p.infinite},
                  {"finite", p.finite},
                  {"infinitesimal", p.infinitesimal},
                  {"truncated", p.truncated}};
  } else {
    j["parts"] = nullptr;
    diagnostics.push_back(p.error);
  }
  j["diagnostics"] = diagnostics;
  for (const auto& [k, v] : env.extra.items()) j[k] = v;
  return j;
}

std::string to_text(const Envelope& env, std::size_t order) {
  std::vector<std::pair<std::string, std::string>> rows;
  rows.emplace_back("input", env.input);
  rows.emplace_back("result", print(env.result));
  for (const auto& [k, v] : env.extra.items()) rows.emplace_back(k, json_scalar_text(v));
  PartsText p = parts_of(env.result, order);
  std::vector<std::string> diagnostics = env.diagnostics;
  if (p.ok) {
    rows.emplace_back("infinite", p.infinite);
    rows.emplace_back("finite", p.finite);
    rows.emplace_back("infinitesimal", p.infinitesimal + (p.truncated ? " + ..." : ""));
  } else {
    diagnostics.push_back(p.error);
  }
  rows.emplace_back("exact", env.exact ? "true" : "false");
  for (const auto& d : diagnostics) rows.emplace_back("diagnostic", d);
  std::size_t width = 0;
  for (const auto& r : rows) width = std::max(width, r.first.size());
  std::ostringstream out;
  for (const auto& [k, v] : rows) out << k << std::string(width + 2 - k.size(), ' ') << v << '\n';
  return out.str();
}

}  // namespace surreal
