#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "knowforge/schema.hpp"

namespace knowforge {

// One KELM-style corpus row: a triple plus its synthetic sentence.
// sub_properties keep file order; they become event roles.
struct RawTriple {
  std::string subject;
  std::string predicate;
  std::string object;
  std::string sentence;
  std::vector<std::pair<std::string, std::string>> sub_properties;
};

using EntityTypingMap = std::unordered_map<std::string, std::vector<std::string>>;

struct CleaningReport {
  std::uint64_t input_count = 0;
  std::uint64_t kept_count = 0;
  std::uint64_t dropped_untyped = 0;
  std::uint64_t dropped_disambiguation = 0;
  std::uint64_t dropped_blacklisted_role = 0;

  bool balanced() const {
    return input_count == kept_count + dropped_untyped + dropped_disambiguation +
                              dropped_blacklisted_role;
  }
};

struct TypedEntity {
  std::string name;                 // cleaned mention
  std::vector<std::string> types;  // cleaned type names
};

struct TypedRow {
  TypedEntity subject;
  TypedEntity object;
  std::string predicate;
  std::string sentence;
  std::vector<std::pair<std::string, std::string>> sub_properties;
  bool is_event = false;
};

struct TaxonomyBuild {
  SchemaLibrary library;
  std::vector<Violation> log;  // dropped cycle edges, orphans
};

// Entity concepts from SubclassOf edges. Multi-parent nodes resolve to the
// hypernym with the most instances; edges that close a cycle are dropped
// (deepest first, DFS over lexicographically sorted nodes) and logged.
TaxonomyBuild build_taxonomy(
    const std::vector<std::pair<std::string, std::string>>& subclass_edges,
    const std::map<std::string, std::uint64_t>& instance_counts);

struct ConstraintBuild {
  std::map<std::string, ConstraintSignature> constraints;  // predicate -> signature
  std::vector<Violation> log;                              // EmptyConstraint entries
};

// head/tail type sets co-occurring with each predicate at least min_support
// times. Types must resolve to entity concepts in the library.
ConstraintBuild derive_constraints(
    const std::vector<std::tuple<ConceptId, std::string, ConceptId>>& typed_triples,
    const SchemaLibrary& library, std::uint64_t min_support = 1);

class DescriptionProvider {
 public:
  virtual ~DescriptionProvider() = default;
  // May throw ProviderUnavailableError.
  virtual std::string describe(const Concept& concept_def) = 0;
};

// Fallback used in tests and offline builds: "A <display_name>."
class StubDescriptionProvider : public DescriptionProvider {
 public:
  std::string describe(const Concept& concept_def) override {
    return "A " + concept_def.display_name + ".";
  }
};

struct DescriptionReport {
  std::uint64_t from_map = 0;
  std::uint64_t from_provider = 0;
  std::uint64_t already_present = 0;
};

DescriptionReport attach_descriptions(SchemaLibrary& library,
                                      const std::map<ConceptId, std::string>& descriptions,
                                      DescriptionProvider& fallback);

struct CleanedCorpus {
  std::vector<TypedRow> rows;
  CleaningReport report;
};

// Drops rows whose subject or object has no type, drops rows typed
// "Wikimedia Disambiguation Page", and strips parenthesized suffixes from
// entity and type names.
CleanedCorpus type_and_clean(const std::vector<RawTriple>& corpus,
                             const EntityTypingMap& typing);

struct EventDerivation {
  std::vector<TypedRow> rows;           // events marked, blacklisted rows removed
  std::uint64_t deleted_blacklisted = 0;
};

// Rows with sub-properties become events (predicate -> event type, keys ->
// roles); rows using a blacklisted role name are deleted entirely.
EventDerivation derive_events(std::vector<TypedRow> rows);

bool role_is_blacklisted(const std::string& role_name);

// Removes "(...)" groups and collapses the surrounding whitespace.
std::string strip_brackets(const std::string& name);

struct LibraryBuild {
  SchemaLibrary library;
  std::vector<TypedRow> corpus;
  CleaningReport report;
  DescriptionReport descriptions;
  std::vector<Violation> log;
};

// Full desk-scale pipeline: taxonomy + cleaned corpus + relation/event
// concepts with constraints, examples, and descriptions.
LibraryBuild build_library(
    const std::vector<std::pair<std::string, std::string>>& subclass_edges,
    const std::vector<RawTriple>& corpus, const EntityTypingMap& typing,
    const std::map<ConceptId, std::string>& descriptions, DescriptionProvider& fallback,
    std::uint64_t min_support = 1);

}  // namespace knowforge
