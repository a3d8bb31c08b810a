#include "knowforge/library_builder.hpp"

#include <algorithm>
#include <set>
#include <tuple>

#include "knowforge/errors.hpp"

namespace knowforge {

namespace {

constexpr const char* kDisambiguationType = "Wikimedia Disambiguation Page";

const std::set<std::string>& role_blacklist() {
  static const std::set<std::string> blacklist = {
      "of", "follows", "followed by", "point in time", "country"};
  return blacklist;
}

std::string collapse_whitespace(const std::string& s) {
  std::string out;
  bool pending_space = false;
  for (char c : s) {
    if (c == ' ' || c == '\t') {
      pending_space = !out.empty();
    } else {
      if (pending_space) out.push_back(' ');
      pending_space = false;
      out.push_back(c);
    }
  }
  return out;
}

// Unique UpperCamelCase class names across one build.
class ClassNamer {
 public:
  std::string name_for(const std::string& display_name) {
    std::string base = to_class_name(display_name);
    if (is_basic_id(base)) base += "Type";
    std::string candidate = base;
    int suffix = 2;
    while (!used_.insert(candidate).second) {
      candidate = base + std::to_string(suffix++);
    }
    return candidate;
  }

  void reserve(const std::string& class_name) { used_.insert(class_name); }

 private:
  std::set<std::string> used_;
};

// Predicates may collide with entity type names; concept ids must stay
// unique within the library.
std::string fresh_concept_id(const SchemaLibrary& library, const std::string& base,
                             const char* tag) {
  if (!library.contains(base)) return base;
  std::string candidate = base + "#" + tag;
  int suffix = 2;
  while (library.contains(candidate)) {
    candidate = base + "#" + tag + std::to_string(suffix++);
  }
  return candidate;
}

}  // namespace

bool role_is_blacklisted(const std::string& role_name) {
  return role_blacklist().count(role_name) != 0;
}

std::string strip_brackets(const std::string& name) {
  std::string out;
  std::size_t i = 0;
  while (i < name.size()) {
    if (name[i] == '(') {
      const std::size_t close = name.find(')', i + 1);
      if (close == std::string::npos) {
        out.append(name, i, std::string::npos);
        break;
      }
      i = close + 1;
      continue;
    }
    out.push_back(name[i]);
    ++i;
  }
  return collapse_whitespace(out);
}

TaxonomyBuild build_taxonomy(
    const std::vector<std::pair<std::string, std::string>>& subclass_edges,
    const std::map<std::string, std::uint64_t>& instance_counts) {
  TaxonomyBuild build;

  std::set<std::string> node_set;
  std::map<std::string, std::set<std::string>> parents_of;
  for (const auto& [child, parent] : subclass_edges) {
    if (child.empty() || parent.empty() || child == parent) continue;
    node_set.insert(child);
    node_set.insert(parent);
    parents_of[child].insert(parent);
  }

  SchemaLibrary staging;  // instance counts only, for hypernym resolution
  ClassNamer namer;
  std::map<std::string, std::string> class_names;
  for (const auto& node : node_set) {
    Concept c;
    c.id = node;
    c.kind = ConceptKind::Entity;
    c.display_name = node;
    c.class_name = namer.name_for(node);
    class_names[node] = c.class_name;
    if (auto it = instance_counts.find(node); it != instance_counts.end()) {
      c.instance_count = it->second;
    }
    staging.add(std::move(c));
  }

  std::map<std::string, std::string> parent;
  for (const auto& [child, candidates] : parents_of) {
    parent[child] = candidates.size() == 1 ? *candidates.begin()
                                           : resolve_hypernym(candidates, staging);
  }

  // Break cycles: walk parent chains from each node in lexicographic order
  // and drop the edge that returns to a node on the current path.
  std::map<std::string, int> color;
  for (const auto& start : node_set) {
    if (color[start] != 0) continue;
    std::vector<std::string> path;
    std::string cur = start;
    while (true) {
      if (color[cur] == 1) {
        const std::string& deepest = path.back();
        build.log.push_back({deepest, "CycleEdgeDropped",
                             "dropped SubclassOf edge " + deepest + " -> " +
                                 parent[deepest] + " to break a cycle"});
        parent.erase(deepest);
        break;
      }
      if (color[cur] == 2) break;
      color[cur] = 1;
      path.push_back(cur);
      auto it = parent.find(cur);
      if (it == parent.end()) break;
      cur = it->second;
    }
    for (const auto& node : path) color[node] = 2;
  }

  std::map<std::string, int> child_count;
  for (const auto& [child, p] : parent) child_count[p]++;
  for (const auto& node : node_set) {
    if (parent.count(node) == 0 && child_count[node] == 0) {
      build.log.push_back({node, "Orphan", "node has no taxonomy edges left"});
    }
  }

  for (const auto& node : node_set) {
    Concept c = staging.get(node);
    if (auto it = parent.find(node); it != parent.end()) c.parent = it->second;
    build.library.add(std::move(c));
  }
  return build;
}

ConstraintBuild derive_constraints(
    const std::vector<std::tuple<ConceptId, std::string, ConceptId>>& typed_triples,
    const SchemaLibrary& library, std::uint64_t min_support) {
  ConstraintBuild build;
  std::map<std::string, std::map<ConceptId, std::uint64_t>> head_counts, tail_counts;
  for (const auto& [head, predicate, tail] : typed_triples) {
    for (const auto& id : {head, tail}) {
      if (library.get(id).kind != ConceptKind::Entity) {
        throw DataError("constraint type " + id + " is not an entity concept");
      }
    }
    head_counts[predicate][head]++;
    tail_counts[predicate][tail]++;
  }
  for (const auto& [predicate, heads] : head_counts) {
    ConstraintSignature sig;
    for (const auto& [id, count] : heads) {
      if (count >= min_support) sig.head_types.push_back(id);
    }
    for (const auto& [id, count] : tail_counts[predicate]) {
      if (count >= min_support) sig.tail_types.push_back(id);
    }
    if (sig.head_types.empty() || sig.tail_types.empty()) {
      build.log.push_back({predicate, "EmptyConstraint",
                           "no head/tail type reaches min_support=" +
                               std::to_string(min_support)});
      continue;
    }
    build.constraints.emplace(predicate, std::move(sig));
  }
  return build;
}

DescriptionReport attach_descriptions(SchemaLibrary& library,
                                      const std::map<ConceptId, std::string>& descriptions,
                                      DescriptionProvider& fallback) {
  DescriptionReport report;
  for (const auto& id : library.ids()) {
    const Concept& c = library.get(id);
    if (auto it = descriptions.find(id); it != descriptions.end()) {
      library.set_description(id, it->second);
      report.from_map++;
    } else if (!c.description.empty()) {
      report.already_present++;
    } else {
      library.set_description(id, fallback.describe(c));
      report.from_provider++;
    }
  }
  return report;
}

CleanedCorpus type_and_clean(const std::vector<RawTriple>& corpus,
                             const EntityTypingMap& typing) {
  CleanedCorpus out;
  out.report.input_count = corpus.size();
  for (const auto& row : corpus) {
    auto subject_types = typing.find(row.subject);
    auto object_types = typing.find(row.object);
    if (subject_types == typing.end() || subject_types->second.empty() ||
        object_types == typing.end() || object_types->second.empty()) {
      out.report.dropped_untyped++;
      continue;
    }
    auto has_disambiguation = [](const std::vector<std::string>& types) {
      return std::find(types.begin(), types.end(), kDisambiguationType) != types.end();
    };
    if (has_disambiguation(subject_types->second) ||
        has_disambiguation(object_types->second)) {
      out.report.dropped_disambiguation++;
      continue;
    }

    TypedRow typed;
    typed.subject.name = strip_brackets(row.subject);
    typed.object.name = strip_brackets(row.object);
    for (const auto& t : subject_types->second) typed.subject.types.push_back(strip_brackets(t));
    for (const auto& t : object_types->second) typed.object.types.push_back(strip_brackets(t));
    typed.predicate = row.predicate;
    typed.sentence = row.sentence;
    for (const auto& [key, value] : row.sub_properties) {
      typed.sub_properties.emplace_back(key, strip_brackets(value));
    }
    out.rows.push_back(std::move(typed));
    out.report.kept_count++;
  }
  return out;
}

EventDerivation derive_events(std::vector<TypedRow> rows) {
  EventDerivation out;
  for (auto& row : rows) {
    if (row.sub_properties.empty()) {
      out.rows.push_back(std::move(row));
      continue;
    }
    const bool blacklisted =
        std::any_of(row.sub_properties.begin(), row.sub_properties.end(),
                    [](const auto& kv) { return role_is_blacklisted(kv.first); });
    if (blacklisted) {
      out.deleted_blacklisted++;
      continue;
    }
    row.is_event = true;
    out.rows.push_back(std::move(row));
  }
  return out;
}

LibraryBuild build_library(
    const std::vector<std::pair<std::string, std::string>>& subclass_edges,
    const std::vector<RawTriple>& corpus, const EntityTypingMap& typing,
    const std::map<ConceptId, std::string>& descriptions, DescriptionProvider& fallback,
    std::uint64_t min_support) {
  LibraryBuild build;

  CleanedCorpus cleaned = type_and_clean(corpus, typing);
  EventDerivation events = derive_events(std::move(cleaned.rows));
  build.report = cleaned.report;
  build.report.kept_count -= events.deleted_blacklisted;
  build.report.dropped_blacklisted_role = events.deleted_blacklisted;
  build.corpus = std::move(events.rows);

  // Mention counts per entity type drive hypernym resolution.
  std::map<std::string, std::uint64_t> instance_counts;
  std::map<std::string, std::map<std::string, std::uint64_t>> mention_counts;
  for (const auto& row : build.corpus) {
    for (const auto* entity : {&row.subject, &row.object}) {
      for (const auto& type : entity->types) {
        instance_counts[type]++;
        mention_counts[type][entity->name]++;
      }
    }
  }

  std::vector<std::pair<std::string, std::string>> edges;
  for (const auto& [child, parent] : subclass_edges) {
    edges.emplace_back(strip_brackets(child), strip_brackets(parent));
  }
  TaxonomyBuild taxonomy = build_taxonomy(edges, instance_counts);
  build.log = taxonomy.log;
  SchemaLibrary& library = taxonomy.library;

  ClassNamer namer;
  for (const auto& id : library.ids()) namer.reserve(library.get(id).class_name);

  // Entity types seen in the corpus but absent from the taxonomy dump.
  std::set<std::string> corpus_types;
  for (const auto& [type, count] : instance_counts) corpus_types.insert(type);
  for (const auto& type : corpus_types) {
    if (library.contains(type)) continue;
    Concept c;
    c.id = type;
    c.kind = ConceptKind::Entity;
    c.display_name = type;
    c.class_name = namer.name_for(type);
    c.instance_count = instance_counts[type];
    library.add(std::move(c));
  }

  auto top_examples = [](const std::map<std::string, std::uint64_t>& counts) {
    std::vector<std::pair<std::string, std::uint64_t>> ranked(counts.begin(), counts.end());
    std::stable_sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
      return a.second != b.second ? a.second > b.second : a.first < b.first;
    });
    std::vector<std::string> out;
    for (const auto& [text, count] : ranked) {
      if (out.size() == 10) break;
      out.push_back(text);
    }
    return out;
  };
  for (const auto& [type, mentions] : mention_counts) {
    library.set_examples(type, top_examples(mentions));
  }

  // Relation and event concepts from the corpus predicates. A predicate with
  // sub-properties anywhere becomes an event type; its plain rows are left
  // in the corpus but emit no relation concept.
  std::set<std::string> event_predicates;
  for (const auto& row : build.corpus) {
    if (row.is_event) event_predicates.insert(row.predicate);
  }

  std::map<std::string, std::map<std::string, std::uint64_t>> relation_pairs;
  std::map<std::string, std::uint64_t> predicate_counts;
  std::vector<std::tuple<ConceptId, std::string, ConceptId>> typed_triples;
  for (const auto& row : build.corpus) {
    if (row.is_event || event_predicates.count(row.predicate) != 0) continue;
    predicate_counts[row.predicate]++;
    relation_pairs[row.predicate]
                  ["(" + row.subject.name + ", " + row.object.name + ")"]++;
    for (const auto& head_type : row.subject.types) {
      for (const auto& tail_type : row.object.types) {
        typed_triples.emplace_back(head_type, row.predicate, tail_type);
      }
    }
  }

  ConstraintBuild constraints = derive_constraints(typed_triples, library, min_support);
  for (const auto& v : constraints.log) build.log.push_back(v);

  for (const auto& [predicate, count] : predicate_counts) {
    Concept c;
    c.id = fresh_concept_id(library, predicate, "relation");
    c.kind = ConceptKind::Relation;
    c.display_name = predicate;
    c.class_name = namer.name_for(predicate);
    c.instance_count = count;
    c.examples = top_examples(relation_pairs[predicate]);
    if (auto it = constraints.constraints.find(predicate);
        it != constraints.constraints.end()) {
      c.constraint = it->second;
    } else {
      c.constraint = ConstraintSignature{{kBasicEntity}, {kBasicEntity}};
    }
    library.add(std::move(c));
  }

  std::map<std::string, std::vector<RoleSpec>> event_roles;
  std::map<std::string, std::uint64_t> event_counts;
  for (const auto& row : build.corpus) {
    if (!row.is_event) continue;
    event_counts[row.predicate]++;
    auto& roles = event_roles[row.predicate];
    for (const auto& [key, value] : row.sub_properties) {
      const std::string role = to_role_name(key);
      const bool known = std::any_of(roles.begin(), roles.end(), [&](const RoleSpec& r) {
        return r.role_name == role;
      });
      if (!known) roles.push_back({role, {}});
    }
  }
  for (const auto& [predicate, roles] : event_roles) {
    Concept c;
    c.id = fresh_concept_id(library, predicate, "event");
    c.kind = ConceptKind::Event;
    c.display_name = predicate;
    c.class_name = namer.name_for(predicate);
    c.instance_count = event_counts[predicate];
    c.roles = roles;
    library.add(std::move(c));
  }

  build.descriptions = attach_descriptions(library, descriptions, fallback);
  build.library = std::move(library);
  return build;
}

}  // namespace knowforge
