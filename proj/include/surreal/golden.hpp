#pragma once

#include "surreal/envelope.hpp"

#include <istream>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace surreal {

/// One corpus line: `ID | verb | input | options :: expected [:: refined]`.
struct GoldenItem {
  std::string id;
  std::string verb;
  std::string input;
  std::string options;
  std::string expected;
  std::optional<std::string> refined;
  int line = 0;

  /// Leading number group of the id ("A2.3" -> 2, "C7.1" -> 7).
  int appendix() const;
};

/// Throws ParseError (offset = line number) on malformed lines.
std::vector<GoldenItem> parse_corpus(std::istream& in);
std::vector<GoldenItem> load_corpus(const std::string& path);
/// Copy of data/golden_corpus.txt compiled into the library.
std::vector<GoldenItem> builtin_corpus();

struct GoldenOutcome {
  std::string id;
  bool pass = false;
  /// "structural", "equivalent" or "mismatch" per instance, plus spot-check notes.
  std::vector<std::string> notes;
  std::vector<Envelope> envelopes;
};

/// Runs every instance of the item; free parameters get three seeded rational
/// spot checks in addition to the symbolic comparison.
GoldenOutcome run_golden(const GoldenItem& item, std::size_t order = 2);

}  // namespace surreal
