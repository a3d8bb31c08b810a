#include "knowforge/codegen.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "knowforge/errors.hpp"
#include "knowforge/rng.hpp"

namespace knowforge {

namespace {

constexpr std::size_t kMaxExamplesShown = 10;
constexpr std::size_t kWrapColumn = 88;
constexpr int kFullyNegativeClassCount = 5;

struct RenderOptions {
  bool multiline_relations = false;
  bool trigger_keyword = false;
};

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i != 0) out += sep;
    out += parts[i];
  }
  return out;
}

std::string examples_list(const Concept& c) {
  std::vector<std::string> shown;
  for (const auto& e : c.examples) {
    if (shown.size() == kMaxExamplesShown) break;
    shown.push_back(e);
  }
  std::string out = join(shown, ", ");
  // Event keyword lists carry a trailing comma in the schema language.
  if (c.kind == ConceptKind::Event && !out.empty()) out += ",";
  return out;
}

// Nearest common ancestor of a constraint's entity types; the basic Entity
// class when the set is empty, mixed, or unrelated.
std::string render_type_hint(const std::vector<ConceptId>& types,
                             const SchemaLibrary& library) {
  if (types.empty()) return kBasicEntity;
  if (types.size() == 1) return library.class_name_of(types[0]);
  std::vector<std::vector<ConceptId>> chains;
  for (const auto& id : types) {
    std::vector<ConceptId> chain{id};
    for (const auto& a : ancestors(id, library)) chain.push_back(a);
    chains.push_back(std::move(chain));
  }
  for (const auto& candidate : chains.front()) {
    bool in_all = true;
    for (std::size_t i = 1; i < chains.size() && in_all; ++i) {
      in_all = std::find(chains[i].begin(), chains[i].end(), candidate) != chains[i].end();
    }
    if (in_all) return library.class_name_of(candidate);
  }
  return kBasicEntity;
}

std::string docstring(const std::string& description, const std::string& examples,
                      bool include_examples_line) {
  std::string out = "    \"\"\"\n";
  out += "    Description:";
  if (!description.empty()) out += " " + description;
  out += "\n";
  if (include_examples_line) {
    out += "    Examples:";
    if (!examples.empty()) out += " " + examples;
    out += "\n";
  }
  out += "    \"\"\"";
  return out;
}

std::string relation_body(const Concept& c, const SchemaLibrary& library) {
  const std::string head = c.constraint
                               ? render_type_hint(c.constraint->head_types, library)
                               : kBasicEntity;
  const std::string tail = c.constraint
                               ? render_type_hint(c.constraint->tail_types, library)
                               : kBasicEntity;
  return "    def __init__(self, head_entity: " + head + ", tail_entity: " + tail +
         "):\n"
         "        super().__init__(head_entity=head_entity, tail_entity=tail_entity)";
}

std::string event_body_arg_names(const Concept& c) {
  std::vector<std::string> quoted;
  for (const auto& role : c.roles) quoted.push_back("\"" + role.role_name + "\"");
  std::string single = "        arg_names = [" + join(quoted, ", ") + "]";
  std::string body = "    def __init__(self, trigger: str, *args):\n";
  if (single.size() <= kWrapColumn) {
    body += single + "\n";
  } else {
    body += "        arg_names = [\n";
    for (const auto& q : quoted) body += "            " + q + ",\n";
    body += "        ]\n";
  }
  body += "        super().__init__(trigger=trigger, arg_names=arg_names, *args)";
  return body;
}

std::string event_body_typed_roles(const Concept& c, const std::string& examples) {
  std::string body = "    def __init__(\n        self,\n        trigger: str,";
  if (!examples.empty()) body += "  # Examples: " + examples;
  body += "\n";
  for (const auto& role : c.roles) {
    body += "        " + role.role_name + ": List[Entity],\n";
  }
  body += "    ):\n        super().__init__(trigger=trigger)";
  for (const auto& role : c.roles) {
    body += "\n        self." + role.role_name + " = " + role.role_name;
  }
  return body;
}

void require_known(const ConceptId& id, const SchemaLibrary& library) {
  library.get(id);  // throws UnknownConceptError
}

void require_extraction_known(const Extraction& e, const SchemaLibrary& library) {
  require_known(e.concept_id, library);
  for (const auto& endpoint : e.endpoints) require_extraction_known(endpoint, library);
  for (const auto& role : e.roles) {
    for (const auto& value : role.values) require_extraction_known(value, library);
  }
}

std::string render_entity(const Extraction& e, const SchemaLibrary& library) {
  return library.class_name_of(e.concept_id) + "(\"" + escape_code_string(e.span) + "\")";
}

std::string render_element(const Extraction& e, const SchemaLibrary& library,
                           const RenderOptions& opts) {
  const std::string name = library.class_name_of(e.concept_id);
  switch (e.kind) {
    case ConceptKind::Entity:
      return "    " + render_entity(e, library);
    case ConceptKind::Relation: {
      const std::string head = render_entity(e.head(), library);
      const std::string tail = render_entity(e.tail(), library);
      if (opts.multiline_relations) {
        return "    " + name + "(\n        " + head + ",\n        " + tail + "\n    )";
      }
      return "    " + name + "(" + head + ", " + tail + ")";
    }
    case ConceptKind::Event: {
      std::vector<std::string> args;
      if (e.trigger) {
        const std::string t = "\"" + escape_code_string(*e.trigger) + "\"";
        args.push_back(opts.trigger_keyword ? "trigger=" + t : t);
      }
      for (const auto& role : e.roles) {
        std::vector<std::string> values;
        for (const auto& value : role.values) values.push_back(render_entity(value, library));
        args.push_back(role.role + "=[" + join(values, ", ") + "]");
      }
      if (args.empty()) return "    " + name + "()";
      if (args.size() == 1 && e.roles.empty()) return "    " + name + "(" + args[0] + ")";
      return "    " + name + "(\n        " + join(args, ",\n        ") + "\n    )";
    }
  }
  return {};
}

std::string render_results_block(const std::vector<Extraction>& extractions,
                                 const SchemaLibrary& library, const RenderOptions& opts) {
  if (extractions.empty()) return "results = []";
  std::vector<std::string> elements;
  for (const auto& e : extractions) elements.push_back(render_element(e, library, opts));
  return "results = [\n" + join(elements, ",\n") + "\n]";
}

// Class names referenced by a result list, grouped per basic kind in the
// order Entities, Relations, Events; first appearance wins inside a group.
struct ImportGroups {
  std::vector<std::string> entities, relations, events;
};

void add_once(std::vector<std::string>& group, const std::string& name) {
  if (std::find(group.begin(), group.end(), name) == group.end()) group.push_back(name);
}

void collect_imports(const Extraction& e, const SchemaLibrary& library, ImportGroups& groups) {
  const std::string name = library.class_name_of(e.concept_id);
  switch (e.kind) {
    case ConceptKind::Entity:
      add_once(groups.entities, name);
      break;
    case ConceptKind::Relation:
      add_once(groups.relations, name);
      for (const auto& endpoint : e.endpoints) collect_imports(endpoint, library, groups);
      break;
    case ConceptKind::Event:
      add_once(groups.events, name);
      for (const auto& role : e.roles) {
        for (const auto& value : role.values) collect_imports(value, library, groups);
      }
      break;
  }
}

std::string import_clause(const ImportGroups& groups) {
  std::vector<std::string> lines;
  if (!groups.entities.empty()) lines.push_back("from Entities import " + join(groups.entities, ", "));
  if (!groups.relations.empty()) lines.push_back("from Relations import " + join(groups.relations, ", "));
  if (!groups.events.empty()) lines.push_back("from Events import " + join(groups.events, ", "));
  return join(lines, "\n");
}

const char* extract_word(ConceptKind kind) {
  switch (kind) {
    case ConceptKind::Entity: return "entities";
    case ConceptKind::Relation: return "relations";
    case ConceptKind::Event: return "events";
  }
  return "entities";
}

std::string kind_word(Task task) {
  switch (task) {
    case Task::NER: return "Entity";
    case Task::RE: return "Relation";
    case Task::ED:
    case Task::EAE: return "Event";
  }
  return "Entity";
}

std::string kind_word_plural(Task task) {
  switch (task) {
    case Task::NER: return "Entities";
    case Task::RE: return "Relations";
    case Task::ED:
    case Task::EAE: return "Events";
  }
  return "Entities";
}

std::string instruction_text(Task task, PromptStyle style, bool generic,
                             const std::optional<std::string>& dataset_tag,
                             const std::vector<TriggerHint>& trigger_hints,
                             const SchemaLibrary& library) {
  std::string text;
  if (style == PromptStyle::IE) {
    text = "Some " + kind_word(task) + " Types are given above. Please find all the " +
           kind_word_plural(task) + " in the above Types in the sentence";
  } else if (generic) {
    text = "This is an object-oriented programming task: some Classes are defined above. "
           "Please instantiate all the corresponding Objects in the following sentence";
  } else {
    const std::string kind = kind_word(task);
    text = "This is an object-oriented programming task: some " + kind +
           " Classes are defined above.";
    if (task == Task::RE) {
      text = "This is an object-oriented programming task: some Relation Classes and "
             "related Entity Classes are defined above.";
    }
    text += " Please instantiate all the corresponding " + kind +
            " Objects in the following sentence";
  }
  if (dataset_tag) text += " from DATASET " + *dataset_tag;
  text += ".";
  if (task == Task::EAE && !trigger_hints.empty()) {
    std::vector<std::string> clauses;
    for (const auto& hint : trigger_hints) {
      clauses.push_back("\"" + hint.trigger + "\" is the trigger of event type \"" +
                        library.class_name_of(hint.concept_id) + "\"");
    }
    text += " It is important to note that the triggers of the events are confirmed as "
            "follows: " + join(clauses, ", ") + ".";
  }
  return text;
}

std::size_t count_tokens(const std::string& text) {
  std::istringstream in(text);
  std::string tok;
  std::size_t n = 0;
  while (in >> tok) ++n;
  return n;
}

}  // namespace

const char* to_string(ImportMode mode) {
  switch (mode) {
    case ImportMode::ImportFirst: return "import_first";
    case ImportMode::SentenceFirst: return "sentence_first";
    case ImportMode::Whole: return "whole";
  }
  return "sentence_first";
}

ImportMode import_mode_from_string(const std::string& s) {
  if (s == "import_first") return ImportMode::ImportFirst;
  if (s == "sentence_first") return ImportMode::SentenceFirst;
  if (s == "whole") return ImportMode::Whole;
  throw ConfigError("unknown import mode: " + s);
}

const char* to_string(PromptStyle style) {
  return style == PromptStyle::IE ? "ie" : "code";
}

PromptStyle prompt_style_from_string(const std::string& s) {
  if (s == "code") return PromptStyle::Code;
  if (s == "ie") return PromptStyle::IE;
  throw ConfigError("unknown prompt style: " + s);
}

const char* to_string(SegmentRole role) {
  switch (role) {
    case SegmentRole::SchemaDef: return "schema_def";
    case SegmentRole::Instruction: return "instruction";
    case SegmentRole::Input: return "input";
    case SegmentRole::Output: return "output";
  }
  return "schema_def";
}

SegmentRole segment_role_from_string(const std::string& s) {
  if (s == "schema_def") return SegmentRole::SchemaDef;
  if (s == "instruction") return SegmentRole::Instruction;
  if (s == "input") return SegmentRole::Input;
  if (s == "output") return SegmentRole::Output;
  throw DataError("unknown segment role: " + s);
}

const Segment* TrainingSample::segment(SegmentRole role) const {
  for (const auto& s : segments) {
    if (s.role == role) return &s;
  }
  return nullptr;
}

std::string escape_code_string(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    if (c == '\\' || c == '"') out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

std::string emit_class_def(const Concept& concept_def, const SchemaLibrary& library,
                           EventDefStyle event_style) {
  require_known(concept_def.id, library);
  std::string parent_name;
  if (concept_def.parent) {
    parent_name = library.class_name_of(*concept_def.parent);
  } else {
    parent_name = basic_class_name(concept_def.kind);
  }
  const std::string examples = examples_list(concept_def);

  std::string out = "class " + concept_def.class_name + "(" + parent_name + "):\n";
  switch (concept_def.kind) {
    case ConceptKind::Entity:
      out += docstring(concept_def.description, examples, true) + "\n";
      out += "    pass";
      break;
    case ConceptKind::Relation:
      out += docstring(concept_def.description, examples, true) + "\n";
      out += relation_body(concept_def, library);
      break;
    case ConceptKind::Event:
      if (event_style == EventDefStyle::ArgNames) {
        out += docstring(concept_def.description, examples, true) + "\n";
        out += event_body_arg_names(concept_def);
      } else {
        // Typed-role constructors move the keyword examples onto the
        // trigger parameter's comment.
        out += docstring(concept_def.description, "", false) + "\n";
        out += event_body_typed_roles(concept_def, examples);
      }
      break;
  }
  return out;
}

std::string emit_basic_class_def(ConceptKind kind, EventDefStyle event_style) {
  switch (kind) {
    case ConceptKind::Entity:
      return "class Entity:\n"
             "    \"\"\"\n"
             "    The base class for all entities.\n"
             "    \"\"\"\n"
             "    def __init__(self, name: str):\n"
             "        self.name = name";
    case ConceptKind::Relation:
      return "class Relation:\n"
             "    \"\"\"\n"
             "    The base class for all relations.\n"
             "    \"\"\"\n"
             "    def __init__(self, head_entity: Entity, tail_entity: Entity):\n"
             "        self.head_entity = head_entity\n"
             "        self.tail_entity = tail_entity";
    case ConceptKind::Event:
      if (event_style == EventDefStyle::ArgNames) {
        return "class Event:\n"
               "    \"\"\"\n"
               "    The base class for all events.\n"
               "    \"\"\"\n"
               "    def __init__(self, trigger: str, arg_names, *args):\n"
               "        self.trigger = trigger\n"
               "        self.arguments = {}\n"
               "        for arg_name, arg_values in zip(arg_names, args):\n"
               "            self.arguments[arg_name] = arg_values";
      }
      return "class Event:\n"
             "    \"\"\"\n"
             "    The base class for all events.\n"
             "    \"\"\"\n"
             "    def __init__(self, trigger: str):\n"
             "        self.trigger = trigger";
  }
  return {};
}

std::vector<PretrainSample> emit_pretrain_schema_block(const SchemaLibrary& library,
                                                       std::size_t token_budget,
                                                       std::uint64_t rng_seed) {
  std::vector<ConceptId> order = library.ids();
  std::sort(order.begin(), order.end());
  Rng rng(mix_seed(rng_seed, "schema_block"));
  shuffle(order, rng);

  std::vector<std::pair<std::string, std::size_t>> defs;  // text, tokens
  std::size_t longest = 0;
  for (const auto& id : order) {
    std::string def = emit_class_def(library.get(id), library);
    const std::size_t tokens = count_tokens(def);
    longest = std::max(longest, tokens);
    defs.emplace_back(std::move(def), tokens);
  }
  if (longest > token_budget) {
    throw BudgetTooSmallError("token budget " + std::to_string(token_budget) +
                              " is below the longest class definition (" +
                              std::to_string(longest) + " tokens)");
  }

  std::vector<PretrainSample> samples;
  PretrainSample current;
  std::size_t used = 0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    const auto& [def, tokens] = defs[i];
    if (!current.concept_ids.empty() && used + tokens > token_budget) {
      samples.push_back(std::move(current));
      current = PretrainSample{};
      used = 0;
    }
    if (!current.text.empty()) current.text += "\n\n";
    current.text += def;
    current.concept_ids.push_back(order[i]);
    used += tokens;
  }
  if (!current.concept_ids.empty()) samples.push_back(std::move(current));
  for (auto& s : samples) s.mode = ImportMode::Whole;
  return samples;
}

PretrainSample emit_instance_code(const std::string& sentence,
                                  const std::vector<Extraction>& extractions,
                                  ImportMode mode, const SchemaLibrary& library) {
  if (extractions.empty()) {
    throw DataError("instance code needs at least one extraction");
  }
  const ConceptKind kind = extractions.front().kind;
  for (const auto& e : extractions) {
    require_extraction_known(e, library);
    if (e.kind != kind) {
      throw DataError("instance code mixes extraction kinds in one sample");
    }
  }

  ImportGroups groups;
  for (const auto& e : extractions) collect_imports(e, library, groups);

  const std::string sentence_part = std::string("# Extract the ") + extract_word(kind) +
                                    " from the following sentence.\nsentence = \"" +
                                    escape_code_string(sentence) + "\"";
  RenderOptions opts;
  opts.multiline_relations = true;
  const std::string results_part = render_results_block(extractions, library, opts);

  PretrainSample sample;
  sample.mode = mode;
  for (const auto& name : groups.entities) {
    const Concept* c = library.find_by_class_name(name);
    add_once(sample.concept_ids, c->id);
  }
  for (const auto& name : groups.relations) {
    add_once(sample.concept_ids, library.find_by_class_name(name)->id);
  }
  for (const auto& name : groups.events) {
    add_once(sample.concept_ids, library.find_by_class_name(name)->id);
  }

  switch (mode) {
    case ImportMode::ImportFirst:
      sample.text = import_clause(groups) + "\n\n" + sentence_part + "\n\n" + results_part;
      break;
    case ImportMode::SentenceFirst:
      sample.text = sentence_part + "\n\n" + import_clause(groups) + "\n\n" + results_part;
      break;
    case ImportMode::Whole: {
      std::vector<std::string> defs;
      auto add_defs = [&](const std::vector<std::string>& names) {
        for (const auto& name : names) {
          const Concept* c = library.find_by_class_name(name);
          if (is_basic_id(c->id)) {
            defs.push_back(emit_basic_class_def(c->kind));
          } else {
            defs.push_back(emit_class_def(*c, library));
          }
        }
      };
      add_defs(groups.entities);
      add_defs(groups.relations);
      add_defs(groups.events);
      sample.text = sentence_part + "\n\n" + join(defs, "\n\n") + "\n\n" + results_part;
      break;
    }
  }
  return sample;
}

NegativeDraw sample_negative_classes(const std::vector<ConceptId>& golden_ids,
                                     const SchemaLibrary& library, std::uint64_t seed) {
  if (golden_ids.empty()) throw DataError("negative sampling needs golden classes");
  const ConceptKind kind = library.get(golden_ids.front()).kind;
  std::set<ConceptId> golden;
  for (const auto& id : golden_ids) {
    if (library.get(id).kind != kind) {
      throw DataError("golden classes mix concept kinds");
    }
    golden.insert(id);
  }

  const std::size_t g = golden.size();
  const std::size_t want = std::max<std::size_t>(1, (2 * g + 5) / 10);

  std::vector<ConceptId> pool;
  for (const auto& id : library.ids_of_kind(kind)) {
    if (golden.count(id) == 0) pool.push_back(id);
  }
  std::sort(pool.begin(), pool.end());

  NegativeDraw draw;
  Rng rng(mix_seed(seed, "negative_classes"));
  if (pool.size() <= want) {
    draw.ids = pool;
    shuffle(draw.ids, rng);
    draw.pool_exhausted = pool.size() < want;
    return draw;
  }
  for (const std::size_t idx : sample_indices(pool.size(), want, rng)) {
    draw.ids.push_back(pool[idx]);
  }
  return draw;
}

std::vector<ConceptId> schema_def_order(const std::vector<ConceptId>& class_ids,
                                        std::uint64_t seed) {
  std::vector<ConceptId> order = class_ids;
  std::sort(order.begin(), order.end());
  order.erase(std::unique(order.begin(), order.end()), order.end());
  Rng rng(mix_seed(seed, "schema_def_order"));
  shuffle(order, rng);
  return order;
}

TrainingSample emit_instruction_sample(const std::string& sentence,
                                       const std::vector<Extraction>& golden,
                                       const std::vector<ConceptId>& negatives,
                                       Task task, PromptStyle style,
                                       const std::optional<std::string>& dataset_tag,
                                       const std::vector<TriggerHint>& trigger_hints,
                                       const SchemaLibrary& library, std::uint64_t seed,
                                       const EmitOptions& options) {
  const ConceptKind kind = kind_for(task);
  std::set<ConceptId> golden_ids;
  for (const auto& e : golden) {
    require_extraction_known(e, library);
    if (e.kind != kind) throw DataError("golden extraction kind does not match task");
    golden_ids.insert(e.concept_id);
  }
  for (const auto& id : negatives) {
    if (library.get(id).kind != kind) {
      throw DataError("negative class " + id + " does not match the task kind");
    }
    if (golden_ids.count(id) != 0) {
      throw DataError("negative class " + id + " overlaps the golden classes");
    }
  }
  if (task == Task::EAE && !golden.empty() && trigger_hints.empty()) {
    throw MissingTriggerHintsError();
  }
  for (const auto& hint : trigger_hints) require_known(hint.concept_id, library);

  std::vector<ConceptId> class_ids(golden_ids.begin(), golden_ids.end());
  class_ids.insert(class_ids.end(), negatives.begin(), negatives.end());
  const std::vector<ConceptId> order = schema_def_order(class_ids, seed);

  const EventDefStyle event_style =
      task == Task::ED ? EventDefStyle::ArgNames : EventDefStyle::TypedRoles;

  std::vector<std::string> defs;
  switch (task) {
    case Task::NER:
      defs.push_back(emit_basic_class_def(ConceptKind::Entity));
      break;
    case Task::RE:
      defs.push_back(emit_basic_class_def(ConceptKind::Entity));
      defs.push_back(emit_basic_class_def(ConceptKind::Relation));
      break;
    case Task::ED:
      defs.push_back(emit_basic_class_def(ConceptKind::Event, EventDefStyle::ArgNames));
      break;
    case Task::EAE:
      defs.push_back(emit_basic_class_def(ConceptKind::Entity));
      defs.push_back(emit_basic_class_def(ConceptKind::Event, EventDefStyle::TypedRoles));
      break;
  }

  if (task == Task::RE) {
    // Entity classes referenced by the relations' type hints are defined
    // before the relation classes themselves.
    std::set<std::string> hint_names;
    std::vector<ConceptId> hint_ids;
    for (const auto& id : order) {
      const Concept& c = library.get(id);
      if (!c.constraint) continue;
      for (const auto* side : {&c.constraint->head_types, &c.constraint->tail_types}) {
        const std::string name = render_type_hint(*side, library);
        if (name == kBasicEntity) continue;
        const Concept* hinted = library.find_by_class_name(name);
        if (hinted != nullptr && hint_names.insert(name).second) {
          hint_ids.push_back(hinted->id);
        }
      }
    }
    std::sort(hint_ids.begin(), hint_ids.end(),
              [&](const ConceptId& a, const ConceptId& b) {
                return library.class_name_of(a) < library.class_name_of(b);
              });
    for (const auto& id : hint_ids) {
      defs.push_back(emit_class_def(library.get(id), library));
    }
  }

  for (const auto& id : order) {
    defs.push_back(emit_class_def(library.get(id), library, event_style));
  }

  RenderOptions render;
  render.trigger_keyword = task == Task::EAE;

  TrainingSample sample;
  sample.task = task;
  sample.sentence = sentence;
  sample.golden = golden;
  sample.negatives = negatives;
  sample.dataset_tag = dataset_tag;
  sample.seed = seed;
  sample.segments.push_back({SegmentRole::SchemaDef, join(defs, "\n\n")});
  sample.segments.push_back(
      {SegmentRole::Instruction,
       "\"\"\"\n" +
           instruction_text(task, style, options.generic_instruction, dataset_tag,
                            trigger_hints, library) +
           "\n\"\"\""});
  sample.segments.push_back(
      {SegmentRole::Input, "sentence = \"" + escape_code_string(sentence) + "\""});
  sample.segments.push_back(
      {SegmentRole::Output, render_results_block(golden, library, render)});
  return sample;
}

std::vector<std::size_t> fully_negative_indices(std::size_t sentence_count, double fraction,
                                                std::uint64_t seed) {
  if (fraction < 0.0 || fraction > 1.0) {
    throw ConfigError("fully-negative fraction must lie in [0, 1]");
  }
  const auto k = static_cast<std::size_t>(
      std::floor(fraction * static_cast<double>(sentence_count)));
  Rng rng(mix_seed(seed, "fully_negative"));
  std::vector<std::size_t> picked = sample_indices(sentence_count, k, rng);
  std::sort(picked.begin(), picked.end());
  return picked;
}

std::vector<TrainingSample> make_fully_negative(const std::vector<std::string>& sentences,
                                                const SchemaLibrary& library, Task task,
                                                double fraction, std::uint64_t seed,
                                                const EmitOptions& options,
                                                const std::optional<std::string>& dataset_tag) {
  const ConceptKind kind = kind_for(task);
  std::vector<ConceptId> pool = library.ids_of_kind(kind);
  std::sort(pool.begin(), pool.end());

  std::vector<TrainingSample> out;
  for (const std::size_t index : fully_negative_indices(sentences.size(), fraction, seed)) {
    const std::uint64_t sample_seed = mix_seed(mix_seed(seed, "fully_negative"), index);
    std::vector<ConceptId> negatives;
    if (pool.size() <= kFullyNegativeClassCount) {
      negatives = pool;
    } else {
      Rng rng(sample_seed);
      for (const std::size_t idx :
           sample_indices(pool.size(), kFullyNegativeClassCount, rng)) {
        negatives.push_back(pool[idx]);
      }
    }
    out.push_back(emit_instruction_sample(sentences[index], {}, negatives, task,
                                          options.style, dataset_tag, {}, library,
                                          sample_seed, options));
  }
  return out;
}

std::string compose_sample_text(const TrainingSample& sample, bool include_output) {
  std::string out;
  bool first = true;
  for (const SegmentRole role : {SegmentRole::SchemaDef, SegmentRole::Instruction,
                                 SegmentRole::Input, SegmentRole::Output}) {
    if (role == SegmentRole::Output && !include_output) break;
    const Segment* seg = sample.segment(role);
    if (seg == nullptr) continue;
    if (!first) out += role == SegmentRole::Input ? "\n" : "\n\n";
    out += seg->text;
    first = false;
  }
  return out;
}

}  // namespace knowforge
