#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

namespace knowforge {

using ConceptId = std::string;  // opaque, case-sensitive, unique per library

enum class ConceptKind { Entity, Relation, Event };

const char* to_string(ConceptKind kind);
ConceptKind concept_kind_from_string(const std::string& s);

// Reserved names of the three basic classes. They resolve in every library
// and may appear as parents (implicitly, via an absent parent field) and in
// constraint signatures, but a library may not define concepts under them.
inline constexpr const char* kBasicEntity = "Entity";
inline constexpr const char* kBasicRelation = "Relation";
inline constexpr const char* kBasicEvent = "Event";

bool is_basic_id(const ConceptId& id);
const char* basic_class_name(ConceptKind kind);

// Allowed head/tail entity types of a relation, derived from co-occurrence.
struct ConstraintSignature {
  std::vector<ConceptId> head_types;  // sorted, distinct
  std::vector<ConceptId> tail_types;  // sorted, distinct

  bool operator==(const ConstraintSignature&) const = default;
};

struct RoleSpec {
  std::string role_name;                 // snake_case
  std::vector<ConceptId> allowed_types;  // empty = unconstrained

  bool operator==(const RoleSpec&) const = default;
};

struct Concept {
  ConceptId id;
  ConceptKind kind = ConceptKind::Entity;
  std::string class_name;    // UpperCamelCase identifier
  std::string display_name;  // original surface name
  std::string description;
  std::vector<std::string> examples;
  std::optional<ConceptId> parent;  // absent = inherits the basic class
  std::uint64_t instance_count = 0;
  std::optional<ConstraintSignature> constraint;  // relations
  std::vector<RoleSpec> roles;                    // events

  bool operator==(const Concept&) const = default;
};

struct Violation {
  ConceptId concept_id;
  std::string code;
  std::string message;
};

// Immutable after construction; concurrent reads are safe.
class SchemaLibrary {
 public:
  SchemaLibrary() = default;

  // Throws DataError on duplicate id.
  void add(Concept node);

  // Builder-phase mutation; libraries are immutable once shared.
  void set_description(const ConceptId& id, std::string description);
  void set_examples(const ConceptId& id, std::vector<std::string> examples);

  bool contains(const ConceptId& id) const;
  // Resolves library concepts and the three basic pseudo-concepts.
  const Concept& get(const ConceptId& id) const;  // throws UnknownConceptError
  const Concept* find(const ConceptId& id) const;
  const Concept* find_by_class_name(const std::string& class_name) const;

  // Insertion-ordered ids, optionally restricted to one kind.
  const std::vector<ConceptId>& ids() const { return order_; }
  std::vector<ConceptId> ids_of_kind(ConceptKind kind) const;

  const std::vector<ConceptId>& children_of(const ConceptId& id) const;
  std::size_t size() const { return order_.size(); }

  // Rendered class name for a concept id or basic id.
  std::string class_name_of(const ConceptId& id) const;

 private:
  std::unordered_map<ConceptId, Concept> concepts_;
  std::vector<ConceptId> order_;
  std::unordered_map<ConceptId, std::vector<ConceptId>> children_;
  std::unordered_map<std::string, ConceptId> by_class_name_;
};

// Concepts of one dataset, aligned onto library ids.
struct DatasetSchema {
  std::string dataset_name;
  std::vector<ConceptId> concept_ids;                  // ordered, distinct
  std::map<std::string, ConceptId> name_alignment;     // dataset name -> id

  bool contains(const ConceptId& id) const;
};

// Candidate hypernym with the most instances; ties broken by lexicographic
// order of the concept id so library builds are reproducible.
ConceptId resolve_hypernym(const std::set<ConceptId>& candidates,
                           const SchemaLibrary& library);

// Parent chain child -> root, excluding `id` itself. Guards against cycles
// so it terminates even on unvalidated input.
std::vector<ConceptId> ancestors(const ConceptId& id, const SchemaLibrary& library);

std::vector<Violation> validate(const SchemaLibrary& library);

// Maps each dataset-local type name to a library concept: exact class_name
// match first, then manual overrides. Throws UnalignedNameError listing all
// names that have neither.
DatasetSchema align_dataset(const std::string& dataset_name,
                            const std::vector<std::string>& dataset_names,
                            const SchemaLibrary& library,
                            const std::map<std::string, ConceptId>& manual_overrides);

// "average ratings" -> "AverageRatings"; used for Wikidata surface names.
std::string to_class_name(const std::string& display_name);
// "connecting line" -> "connecting_line"
std::string to_role_name(const std::string& name);

}  // namespace knowforge
