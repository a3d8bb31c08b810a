#include "knowforge/postprocess.hpp"

#include <algorithm>
#include <cctype>

#include "knowforge/errors.hpp"

namespace knowforge {

namespace {

bool is_word_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0; }

bool contains_span(const std::string& sentence, const std::string& span) {
  return !span.empty() && sentence.find(span) != std::string::npos;
}

// First whole-word occurrence of `word` in `text`, npos if none.
std::size_t find_whole_word(const std::string& text, const std::string& word) {
  if (word.empty()) return std::string::npos;
  std::size_t pos = 0;
  while ((pos = text.find(word, pos)) != std::string::npos) {
    const bool left_ok = pos == 0 || !is_word_char(text[pos - 1]);
    const std::size_t end = pos + word.size();
    const bool right_ok = end == text.size() || !is_word_char(text[end]);
    if (left_ok && right_ok) return pos;
    ++pos;
  }
  return std::string::npos;
}

std::optional<std::string> apply_suffix_rule(const std::string& span,
                                             const std::string& word,
                                             const std::string& sentence) {
  if (!is_numeric_like(span)) return std::nullopt;
  std::size_t pos = 0;
  while ((pos = sentence.find(span, pos)) != std::string::npos) {
    std::size_t i = pos + span.size();
    std::size_t ws = 0;
    while (i < sentence.size() && std::isspace(static_cast<unsigned char>(sentence[i]))) {
      ++i;
      ++ws;
    }
    if (ws > 0 && sentence.compare(i, word.size(), word) == 0) {
      const std::size_t end = i + word.size();
      if (end == sentence.size() || !is_word_char(sentence[end])) {
        return sentence.substr(pos, end - pos);
      }
    }
    ++pos;
  }
  return std::nullopt;
}

std::optional<std::string> apply_truncate_rule(const std::string& span,
                                               const std::string& word) {
  const std::size_t pos = find_whole_word(span, word);
  if (pos == std::string::npos || pos == 0) return std::nullopt;
  std::string out = span.substr(0, pos);
  while (!out.empty() && std::isspace(static_cast<unsigned char>(out.back()))) {
    out.pop_back();
  }
  if (out.empty()) return std::nullopt;
  return out;
}

// Entities nested inside relations and events get the same induction, but
// never drop their parent prediction.
void induce_nested(Extraction& e, const DatasetSchema& dataset,
                   const SchemaLibrary& library) {
  if (e.kind == ConceptKind::Entity) {
    if (e.concept_id == kBasicEntity || dataset.contains(e.concept_id) ||
        !library.contains(e.concept_id)) {
      return;
    }
    for (const auto& ancestor : ancestors(e.concept_id, library)) {
      if (dataset.contains(ancestor)) {
        e.concept_id = ancestor;
        return;
      }
    }
    return;
  }
  for (auto& endpoint : e.endpoints) induce_nested(endpoint, dataset, library);
  for (auto& role : e.roles) {
    for (auto& value : role.values) induce_nested(value, dataset, library);
  }
}

bool spans_in_sentence(const Extraction& e, const std::string& sentence) {
  switch (e.kind) {
    case ConceptKind::Entity:
      return contains_span(sentence, e.span);
    case ConceptKind::Relation:
      return contains_span(sentence, e.head().span) &&
             contains_span(sentence, e.tail().span);
    case ConceptKind::Event: {
      if (e.trigger && !contains_span(sentence, *e.trigger)) return false;
      for (const auto& role : e.roles) {
        for (const auto& value : role.values) {
          if (!contains_span(sentence, value.span)) return false;
        }
      }
      return true;
    }
  }
  return false;
}

}  // namespace

bool is_numeric_like(const std::string& span) {
  if (span.empty()) return false;
  if (std::all_of(span.begin(), span.end(), [](unsigned char c) {
        return std::isdigit(c) != 0;
      })) {
    return true;
  }
  std::string lower;
  for (char c : span) lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  static const char* kNumberWords[] = {"one", "two",   "three", "four", "five",
                                       "six", "seven", "eight", "nine", "ten"};
  for (const char* w : kNumberWords) {
    if (lower == w) return true;
  }
  return false;
}

const char* to_string(ClassMethodKind kind) {
  return kind == ClassMethodKind::SuffixFromSentence ? "SuffixFromSentence" : "TruncateAt";
}

ClassMethodKind class_method_kind_from_string(const std::string& s) {
  if (s == "SuffixFromSentence") return ClassMethodKind::SuffixFromSentence;
  if (s == "TruncateAt") return ClassMethodKind::TruncateAt;
  throw DataError("unknown class-method rule: " + s);
}

std::optional<Extraction> superclass_induce(const Extraction& pred,
                                            const DatasetSchema& dataset,
                                            const SchemaLibrary& library) {
  if (dataset.contains(pred.concept_id)) return pred;
  if (!library.contains(pred.concept_id)) return std::nullopt;  // provisional name
  for (const auto& ancestor : ancestors(pred.concept_id, library)) {
    if (dataset.contains(ancestor)) {
      Extraction out = pred;
      out.concept_id = ancestor;
      return out;
    }
  }
  return std::nullopt;
}

FilterResult filter_predictions(const std::vector<Extraction>& preds,
                                const DatasetSchema& dataset, const SchemaLibrary& library,
                                const std::string& sentence) {
  FilterResult out;
  for (const auto& pred : preds) {
    auto induced = superclass_induce(pred, dataset, library);
    if (!induced) {
      out.report.dropped_type++;
      continue;
    }
    if (induced->concept_id != pred.concept_id) out.report.induced++;
    induce_nested(*induced, dataset, library);

    if (induced->kind == ConceptKind::Event) {
      const Concept& event_spec = library.get(induced->concept_id);
      std::vector<RoleFill> kept_roles;
      for (auto& role : induced->roles) {
        const bool declared =
            std::any_of(event_spec.roles.begin(), event_spec.roles.end(),
                        [&](const RoleSpec& r) { return r.role_name == role.role; });
        if (declared) kept_roles.push_back(std::move(role));
      }
      induced->roles = std::move(kept_roles);
    }

    if (!spans_in_sentence(*induced, sentence)) {
      out.report.dropped_text++;
      continue;
    }
    out.kept.push_back(std::move(*induced));
  }
  return out;
}

Extraction apply_class_methods(const Extraction& pred,
                               const std::vector<ClassMethodRule>& rules,
                               const std::string& sentence) {
  if (pred.kind != ConceptKind::Entity) return pred;
  for (const auto& rule : rules) {
    if (rule.concept_id != pred.concept_id || rule.word.empty()) continue;
    std::optional<std::string> rewritten;
    switch (rule.kind) {
      case ClassMethodKind::SuffixFromSentence:
        rewritten = apply_suffix_rule(pred.span, rule.word, sentence);
        break;
      case ClassMethodKind::TruncateAt:
        rewritten = apply_truncate_rule(pred.span, rule.word);
        break;
    }
    if (rewritten) {
      Extraction out = pred;
      out.span = std::move(*rewritten);
      return out;
    }
  }
  return pred;
}

}  // namespace knowforge
