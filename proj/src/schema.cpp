#include "knowforge/schema.hpp"

#include <algorithm>
#include <cctype>

#include "knowforge/errors.hpp"

namespace knowforge {

const char* to_string(ConceptKind kind) {
  switch (kind) {
    case ConceptKind::Entity: return "Entity";
    case ConceptKind::Relation: return "Relation";
    case ConceptKind::Event: return "Event";
  }
  return "Entity";
}

ConceptKind concept_kind_from_string(const std::string& s) {
  if (s == "Entity") return ConceptKind::Entity;
  if (s == "Relation") return ConceptKind::Relation;
  if (s == "Event") return ConceptKind::Event;
  throw DataError("unknown concept kind: " + s);
}

bool is_basic_id(const ConceptId& id) {
  return id == kBasicEntity || id == kBasicRelation || id == kBasicEvent;
}

const char* basic_class_name(ConceptKind kind) { return to_string(kind); }

namespace {

const Concept& basic_concept(const ConceptId& id) {
  static const Concept entity{kBasicEntity, ConceptKind::Entity, kBasicEntity,
                              kBasicEntity, "The base class for all entities.",
                              {}, std::nullopt, 0, std::nullopt, {}};
  static const Concept relation{kBasicRelation, ConceptKind::Relation,
                                kBasicRelation, kBasicRelation,
                                "The base class for all relations.",
                                {}, std::nullopt, 0, std::nullopt, {}};
  static const Concept event{kBasicEvent, ConceptKind::Event, kBasicEvent,
                             kBasicEvent, "The base class for all events.",
                             {}, std::nullopt, 0, std::nullopt, {}};
  if (id == kBasicRelation) return relation;
  if (id == kBasicEvent) return event;
  return entity;
}

bool valid_class_name(const std::string& name) {
  if (name.empty() || !std::isupper(static_cast<unsigned char>(name[0]))) return false;
  return std::all_of(name.begin(), name.end(), [](unsigned char c) {
    return std::isalnum(c) != 0;
  });
}

bool valid_role_name(const std::string& name) {
  if (name.empty() || !std::islower(static_cast<unsigned char>(name[0]))) return false;
  return std::all_of(name.begin(), name.end(), [](unsigned char c) {
    return std::islower(c) || std::isdigit(c) || c == '_';
  });
}

}  // namespace

void SchemaLibrary::add(Concept c) {
  if (concepts_.count(c.id) != 0) {
    throw DataError("duplicate concept id: " + c.id);
  }
  const ConceptId id = c.id;
  if (c.parent) children_[*c.parent].push_back(id);
  if (!c.class_name.empty()) by_class_name_.emplace(c.class_name, id);
  concepts_.emplace(id, std::move(c));
  order_.push_back(id);
}

void SchemaLibrary::set_description(const ConceptId& id, std::string description) {
  auto it = concepts_.find(id);
  if (it == concepts_.end()) throw UnknownConceptError(id);
  it->second.description = std::move(description);
}

void SchemaLibrary::set_examples(const ConceptId& id, std::vector<std::string> examples) {
  auto it = concepts_.find(id);
  if (it == concepts_.end()) throw UnknownConceptError(id);
  it->second.examples = std::move(examples);
}

bool SchemaLibrary::contains(const ConceptId& id) const {
  return concepts_.count(id) != 0;
}

const Concept& SchemaLibrary::get(const ConceptId& id) const {
  auto it = concepts_.find(id);
  if (it != concepts_.end()) return it->second;
  if (is_basic_id(id)) return basic_concept(id);
  throw UnknownConceptError(id);
}

const Concept* SchemaLibrary::find(const ConceptId& id) const {
  auto it = concepts_.find(id);
  if (it != concepts_.end()) return &it->second;
  if (is_basic_id(id)) return &basic_concept(id);
  return nullptr;
}

const Concept* SchemaLibrary::find_by_class_name(const std::string& class_name) const {
  auto it = by_class_name_.find(class_name);
  if (it != by_class_name_.end()) return &concepts_.at(it->second);
  if (is_basic_id(class_name)) return &basic_concept(class_name);
  return nullptr;
}

std::vector<ConceptId> SchemaLibrary::ids_of_kind(ConceptKind kind) const {
  std::vector<ConceptId> out;
  for (const auto& id : order_) {
    if (concepts_.at(id).kind == kind) out.push_back(id);
  }
  return out;
}

const std::vector<ConceptId>& SchemaLibrary::children_of(const ConceptId& id) const {
  static const std::vector<ConceptId> empty;
  auto it = children_.find(id);
  return it == children_.end() ? empty : it->second;
}

std::string SchemaLibrary::class_name_of(const ConceptId& id) const {
  return get(id).class_name;
}

bool DatasetSchema::contains(const ConceptId& id) const {
  return std::find(concept_ids.begin(), concept_ids.end(), id) != concept_ids.end();
}

ConceptId resolve_hypernym(const std::set<ConceptId>& candidates,
                           const SchemaLibrary& library) {
  if (candidates.empty()) throw DataError("resolve_hypernym: empty candidate set");
  const ConceptId* best = nullptr;
  std::uint64_t best_count = 0;
  for (const auto& id : candidates) {
    const Concept& c = library.get(id);  // throws UnknownConceptError
    // std::set iterates in lexicographic order, so on an instance-count tie
    // the smallest id is kept.
    if (best == nullptr || c.instance_count > best_count) {
      best = &id;
      best_count = c.instance_count;
    }
  }
  return *best;
}

std::vector<ConceptId> ancestors(const ConceptId& id, const SchemaLibrary& library) {
  const Concept* current = &library.get(id);
  std::vector<ConceptId> chain;
  std::set<ConceptId> seen{id};
  while (current->parent) {
    const ConceptId& next = *current->parent;
    if (!seen.insert(next).second) break;  // cycle in unvalidated input
    chain.push_back(next);
    const Concept* parent = library.find(next);
    if (parent == nullptr) break;  // dangling parent, reported by validate()
    current = parent;
  }
  return chain;
}

namespace {

void check_entity_refs(const SchemaLibrary& library, const ConceptId& owner,
                       const std::vector<ConceptId>& refs, const char* where,
                       std::vector<Violation>& out) {
  for (const auto& ref : refs) {
    const Concept* target = library.find(ref);
    if (target == nullptr) {
      out.push_back({owner, "DanglingReference",
                     std::string(where) + " references missing concept " + ref});
    } else if (target->kind != ConceptKind::Entity) {
      out.push_back({owner, "DanglingReference",
                     std::string(where) + " references non-entity concept " + ref});
    }
  }
}

}  // namespace

std::vector<Violation> validate(const SchemaLibrary& library) {
  std::vector<Violation> out;
  std::map<std::string, int> class_name_uses;

  for (const auto& id : library.ids()) {
    const Concept& c = library.get(id);
    if (id.empty()) out.push_back({id, "EmptyId", "concept id is empty"});
    if (is_basic_id(id) || is_basic_id(c.class_name)) {
      out.push_back({id, "ReservedName", "basic class names are reserved"});
    }
    if (!valid_class_name(c.class_name)) {
      out.push_back({id, "BadClassName", "class_name '" + c.class_name +
                                             "' is not UpperCamelCase"});
    }
    class_name_uses[c.class_name]++;

    if (c.parent) {
      const Concept* parent = library.find(*c.parent);
      if (parent == nullptr) {
        out.push_back({id, "UnknownParent", "parent " + *c.parent + " not found"});
      } else if (parent->kind != c.kind) {
        out.push_back({id, "ParentKindMismatch",
                       "parent " + *c.parent + " has a different kind"});
      }
    }

    if (c.kind == ConceptKind::Event) {
      if (c.roles.empty()) {
        out.push_back({id, "MissingRoles", "event concept has no roles"});
      }
    } else if (!c.roles.empty()) {
      out.push_back({id, "UnexpectedRoles", "non-event concept has roles"});
    }

    if (c.kind == ConceptKind::Relation) {
      if (!c.constraint) {
        out.push_back({id, "MissingConstraint", "relation concept has no constraint"});
      } else {
        if (c.constraint->head_types.empty() || c.constraint->tail_types.empty()) {
          out.push_back({id, "EmptyConstraint", "constraint side is empty"});
        }
        check_entity_refs(library, id, c.constraint->head_types, "head_types", out);
        check_entity_refs(library, id, c.constraint->tail_types, "tail_types", out);
      }
    } else if (c.constraint) {
      out.push_back({id, "UnexpectedConstraint", "non-relation concept has a constraint"});
    }

    std::set<std::string> role_names;
    for (const auto& role : c.roles) {
      if (!valid_role_name(role.role_name)) {
        out.push_back({id, "BadRoleName",
                       "role '" + role.role_name + "' is not snake_case"});
      }
      if (!role_names.insert(role.role_name).second) {
        out.push_back({id, "DuplicateRoleName", "role '" + role.role_name +
                                                    "' appears twice"});
      }
      check_entity_refs(library, id, role.allowed_types, "allowed_types", out);
    }
  }

  for (const auto& [name, uses] : class_name_uses) {
    if (uses > 1) {
      out.push_back({"", "DuplicateClassName",
                     "class_name '" + name + "' used by " + std::to_string(uses) +
                         " concepts"});
    }
  }

  // Cycle check over parent links (each concept has at most one parent).
  std::map<ConceptId, int> color;  // 0 unvisited, 1 in progress, 2 done
  for (const auto& start : library.ids()) {
    if (color[start] != 0) continue;
    std::vector<ConceptId> path;
    ConceptId cur = start;
    while (true) {
      if (color[cur] == 1) {
        out.push_back({cur, "CycleDetected", "parent chain returns to " + cur});
        break;
      }
      if (color[cur] == 2) break;
      color[cur] = 1;
      path.push_back(cur);
      const Concept* c = library.find(cur);
      if (c == nullptr || !c->parent || library.find(*c->parent) == nullptr ||
          is_basic_id(*c->parent)) {
        break;
      }
      cur = *c->parent;
    }
    for (const auto& node : path) color[node] = 2;
  }

  return out;
}

DatasetSchema align_dataset(const std::string& dataset_name,
                            const std::vector<std::string>& dataset_names,
                            const SchemaLibrary& library,
                            const std::map<std::string, ConceptId>& manual_overrides) {
  DatasetSchema schema;
  schema.dataset_name = dataset_name;
  std::vector<std::string> unaligned;
  std::set<ConceptId> used;
  for (const auto& name : dataset_names) {
    const Concept* match = library.find_by_class_name(name);
    ConceptId target;
    if (match != nullptr && !is_basic_id(match->id)) {
      target = match->id;
    } else if (auto it = manual_overrides.find(name); it != manual_overrides.end()) {
      if (!library.contains(it->second)) {
        unaligned.push_back(name);
        continue;
      }
      target = it->second;
    } else {
      unaligned.push_back(name);
      continue;
    }
    if (!used.insert(target).second) {
      throw DataError("dataset names '" + name + "' and another both align to " +
                      target + "; alignment must preserve cardinality");
    }
    schema.concept_ids.push_back(target);
    schema.name_alignment.emplace(name, target);
  }
  if (!unaligned.empty()) throw UnalignedNameError(std::move(unaligned));
  return schema;
}

std::string to_class_name(const std::string& display_name) {
  std::string out;
  bool start_word = true;
  for (unsigned char c : display_name) {
    if (std::isalnum(c)) {
      if (start_word && std::isalpha(c)) {
        out.push_back(static_cast<char>(std::toupper(c)));
      } else {
        out.push_back(static_cast<char>(c));
      }
      start_word = false;
    } else {
      start_word = true;
    }
  }
  if (out.empty() || !std::isupper(static_cast<unsigned char>(out[0]))) {
    out.insert(out.begin(), 'C');
  }
  return out;
}

std::string to_role_name(const std::string& name) {
  std::string out;
  bool pending_sep = false;
  for (unsigned char c : name) {
    if (std::isalnum(c)) {
      if (pending_sep && !out.empty()) out.push_back('_');
      pending_sep = false;
      out.push_back(static_cast<char>(std::tolower(c)));
    } else {
      pending_sep = true;
    }
  }
  if (out.empty() || !std::islower(static_cast<unsigned char>(out[0]))) {
    out.insert(0, "r_");
  }
  return out;
}

}  // namespace knowforge
