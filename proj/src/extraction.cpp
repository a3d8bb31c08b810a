#include "knowforge/extraction.hpp"

#include "knowforge/errors.hpp"

namespace knowforge {

const char* to_string(Task task) {
  switch (task) {
    case Task::NER: return "NER";
    case Task::RE: return "RE";
    case Task::ED: return "ED";
    case Task::EAE: return "EAE";
  }
  return "NER";
}

Task task_from_string(const std::string& s) {
  if (s == "NER") return Task::NER;
  if (s == "RE") return Task::RE;
  if (s == "ED") return Task::ED;
  if (s == "EAE") return Task::EAE;
  throw DataError("unknown task: " + s);
}

ConceptKind kind_for(Task task) {
  switch (task) {
    case Task::NER: return ConceptKind::Entity;
    case Task::RE: return ConceptKind::Relation;
    case Task::ED:
    case Task::EAE: return ConceptKind::Event;
  }
  return ConceptKind::Entity;
}

Extraction make_entity(ConceptId concept_id, std::string span) {
  Extraction e;
  e.kind = ConceptKind::Entity;
  e.concept_id = std::move(concept_id);
  e.span = std::move(span);
  return e;
}

Extraction make_relation(ConceptId concept_id, Extraction head, Extraction tail) {
  Extraction e;
  e.kind = ConceptKind::Relation;
  e.concept_id = std::move(concept_id);
  e.endpoints.push_back(std::move(head));
  e.endpoints.push_back(std::move(tail));
  return e;
}

Extraction make_event(ConceptId concept_id, std::optional<std::string> trigger,
                      std::vector<RoleFill> roles) {
  Extraction e;
  e.kind = ConceptKind::Event;
  e.concept_id = std::move(concept_id);
  e.trigger = std::move(trigger);
  e.roles = std::move(roles);
  return e;
}

}  // namespace knowforge
