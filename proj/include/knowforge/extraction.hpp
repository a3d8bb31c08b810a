#pragma once

#include <optional>
#include <string>
#include <vector>

#include "knowforge/schema.hpp"

namespace knowforge {

enum class Task { NER, RE, ED, EAE };

const char* to_string(Task task);
Task task_from_string(const std::string& s);
ConceptKind kind_for(Task task);

struct Extraction;

struct RoleFill {
  std::string role;
  std::vector<Extraction> values;  // entity extractions

  bool operator==(const RoleFill&) const = default;
};

// One typed mention: an entity span, a relation over two entities, or an
// event (optional trigger plus role -> argument lists; KELM-derived events
// carry no trigger).
struct Extraction {
  ConceptKind kind = ConceptKind::Entity;
  ConceptId concept_id;
  bool provisional = false;  // class name did not resolve in the schema
  std::string span;          // entities: mention text
  std::vector<Extraction> endpoints;  // relations: [head, tail]
  std::optional<std::string> trigger;
  std::vector<RoleFill> roles;

  const Extraction& head() const { return endpoints.at(0); }
  const Extraction& tail() const { return endpoints.at(1); }

  bool operator==(const Extraction&) const = default;
};

Extraction make_entity(ConceptId concept_id, std::string span);
Extraction make_relation(ConceptId concept_id, Extraction head, Extraction tail);
Extraction make_event(ConceptId concept_id, std::optional<std::string> trigger,
                      std::vector<RoleFill> roles);

}  // namespace knowforge
