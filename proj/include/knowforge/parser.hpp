#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "knowforge/extraction.hpp"
#include "knowforge/schema.hpp"

namespace knowforge {

enum class Severity { Warning, Error };

struct Diagnostic {
  Severity severity = Severity::Error;
  std::string message;
  std::size_t begin = 0;  // byte range within the parsed text
  std::size_t end = 0;
};

struct ParseOutcome {
  std::vector<Extraction> extractions;
  std::vector<Diagnostic> diagnostics;
  // False when the text contains no `results = [...]` assignment at all.
  bool found_results = false;
};

// Parses the last `results = [...]` assignment in `text` into typed
// extractions. Class names resolve against the library (and, when given, a
// dataset's name alignment); unresolved names are kept as provisional
// extractions for downstream filtering. Malformed elements are recovered
// element by element: the parser skips to the next top-level comma and
// keeps every well-formed sibling. Never throws on any input.
ParseOutcome parse_results(std::string_view text, const SchemaLibrary& library,
                           const DatasetSchema* dataset = nullptr);

}  // namespace knowforge
