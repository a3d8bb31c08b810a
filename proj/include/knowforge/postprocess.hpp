#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "knowforge/extraction.hpp"
#include "knowforge/schema.hpp"

namespace knowforge {

enum class ClassMethodKind {
  SuffixFromSentence,  // extend a numeric span by the word that follows it
  TruncateAt,          // cut the span before a whole-word occurrence
};

struct ClassMethodRule {
  ConceptId concept_id;
  ClassMethodKind kind = ClassMethodKind::TruncateAt;
  std::string word;
};

struct PostprocessReport {
  std::uint64_t induced = 0;       // concepts rewritten to a dataset ancestor
  std::uint64_t dropped_type = 0;  // no ancestor in the dataset schema
  std::uint64_t dropped_text = 0;  // span not found in the sentence
  std::uint64_t rewritten = 0;     // spans rewritten by class methods
};

// Rewrites a prediction's concept to its nearest ancestor present in the
// dataset schema; nullopt when no ancestor qualifies.
std::optional<Extraction> superclass_induce(const Extraction& pred,
                                            const DatasetSchema& dataset,
                                            const SchemaLibrary& library);

struct FilterResult {
  std::vector<Extraction> kept;
  PostprocessReport report;
};

// Per prediction: superclass induction, type filtering, text filtering, and
// removal of event arguments under roles the concept does not declare.
FilterResult filter_predictions(const std::vector<Extraction>& preds,
                                const DatasetSchema& dataset, const SchemaLibrary& library,
                                const std::string& sentence);

// First matching rule for the prediction's concept rewrites the span; the
// sentence supplies the replacement text so results stay substrings of it.
Extraction apply_class_methods(const Extraction& pred,
                               const std::vector<ClassMethodRule>& rules,
                               const std::string& sentence);

bool is_numeric_like(const std::string& span);

const char* to_string(ClassMethodKind kind);
ClassMethodKind class_method_kind_from_string(const std::string& s);

}  // namespace knowforge
