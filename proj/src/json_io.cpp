#include "knowforge/json_io.hpp"

#include <fstream>
#include <sstream>

#include "knowforge/errors.hpp"

namespace knowforge {

Json to_json(const Concept& concept_def) {
  Json j;
  j["id"] = concept_def.id;
  j["kind"] = to_string(concept_def.kind);
  j["class_name"] = concept_def.class_name;
  j["display_name"] = concept_def.display_name;
  j["description"] = concept_def.description;
  j["examples"] = concept_def.examples;
  if (concept_def.parent) j["parent"] = *concept_def.parent;
  j["instance_count"] = concept_def.instance_count;
  if (concept_def.constraint) {
    j["constraint"] = Json{{"head_types", concept_def.constraint->head_types},
                           {"tail_types", concept_def.constraint->tail_types}};
  }
  if (!concept_def.roles.empty()) {
    Json roles = Json::array();
    for (const auto& role : concept_def.roles) {
      roles.push_back(Json{{"role_name", role.role_name},
                           {"allowed_types", role.allowed_types}});
    }
    j["roles"] = roles;
  }
  return j;
}

Concept concept_from_json(const Json& j) {
  Concept c;
  c.id = j.at("id").get<std::string>();
  c.kind = concept_kind_from_string(j.at("kind").get<std::string>());
  c.class_name = j.at("class_name").get<std::string>();
  c.display_name = j.value("display_name", c.class_name);
  c.description = j.value("description", std::string{});
  if (j.contains("examples")) c.examples = j.at("examples").get<std::vector<std::string>>();
  if (j.contains("parent") && !j.at("parent").is_null()) {
    c.parent = j.at("parent").get<std::string>();
  }
  c.instance_count = j.value("instance_count", std::uint64_t{0});
  if (j.contains("constraint") && !j.at("constraint").is_null()) {
    ConstraintSignature sig;
    sig.head_types = j.at("constraint").at("head_types").get<std::vector<std::string>>();
    sig.tail_types = j.at("constraint").at("tail_types").get<std::vector<std::string>>();
    c.constraint = std::move(sig);
  }
  if (j.contains("roles")) {
    for (const auto& role : j.at("roles")) {
      RoleSpec spec;
      spec.role_name = role.at("role_name").get<std::string>();
      if (role.contains("allowed_types")) {
        spec.allowed_types = role.at("allowed_types").get<std::vector<std::string>>();
      }
      c.roles.push_back(std::move(spec));
    }
  }
  return c;
}

Json to_json(const Extraction& e) {
  Json j;
  j["kind"] = to_string(e.kind);
  j["concept"] = e.concept_id;
  if (e.provisional) j["provisional"] = true;
  switch (e.kind) {
    case ConceptKind::Entity:
      j["span"] = e.span;
      break;
    case ConceptKind::Relation:
      j["head"] = to_json(e.head());
      j["tail"] = to_json(e.tail());
      break;
    case ConceptKind::Event: {
      if (e.trigger) j["trigger"] = *e.trigger;
      Json roles = Json::object();
      for (const auto& role : e.roles) {
        Json values = Json::array();
        for (const auto& value : role.values) values.push_back(to_json(value));
        roles[role.role] = values;
      }
      j["roles"] = roles;
      break;
    }
  }
  return j;
}

Extraction extraction_from_json(const Json& j) {
  Extraction e;
  e.kind = concept_kind_from_string(j.at("kind").get<std::string>());
  e.concept_id = j.at("concept").get<std::string>();
  e.provisional = j.value("provisional", false);
  switch (e.kind) {
    case ConceptKind::Entity:
      e.span = j.value("span", std::string{});
      break;
    case ConceptKind::Relation:
      e.endpoints.push_back(extraction_from_json(j.at("head")));
      e.endpoints.push_back(extraction_from_json(j.at("tail")));
      break;
    case ConceptKind::Event: {
      if (j.contains("trigger") && !j.at("trigger").is_null()) {
        e.trigger = j.at("trigger").get<std::string>();
      }
      if (j.contains("roles")) {
        for (const auto& [role, values] : j.at("roles").items()) {
          RoleFill fill;
          fill.role = role;
          for (const auto& value : values) fill.values.push_back(extraction_from_json(value));
          e.roles.push_back(std::move(fill));
        }
      }
      break;
    }
  }
  return e;
}

Json to_json(const TrainingSample& sample) {
  Json segments = Json::array();
  for (const auto& segment : sample.segments) {
    segments.push_back(Json{{"role", to_string(segment.role)}, {"text", segment.text}});
  }
  Json golden = Json::array();
  for (const auto& e : sample.golden) golden.push_back(to_json(e));
  Json j;
  j["segments"] = segments;
  j["task"] = to_string(sample.task);
  j["sentence"] = sample.sentence;
  j["golden"] = golden;
  j["negatives"] = sample.negatives;
  if (sample.dataset_tag) j["dataset_tag"] = *sample.dataset_tag;
  j["seed"] = sample.seed;
  return j;
}

TrainingSample training_sample_from_json(const Json& j) {
  TrainingSample sample;
  for (const auto& segment : j.at("segments")) {
    sample.segments.push_back({segment_role_from_string(segment.at("role").get<std::string>()),
                               segment.at("text").get<std::string>()});
  }
  sample.task = task_from_string(j.at("task").get<std::string>());
  sample.sentence = j.value("sentence", std::string{});
  if (j.contains("golden")) {
    for (const auto& e : j.at("golden")) sample.golden.push_back(extraction_from_json(e));
  }
  if (j.contains("negatives")) {
    sample.negatives = j.at("negatives").get<std::vector<std::string>>();
  }
  if (j.contains("dataset_tag") && !j.at("dataset_tag").is_null()) {
    sample.dataset_tag = j.at("dataset_tag").get<std::string>();
  }
  sample.seed = j.value("seed", std::uint64_t{0});
  return sample;
}

Json to_json(const PretrainSample& sample) {
  Json j;
  j["text"] = sample.text;
  j["mode"] = to_string(sample.mode);
  j["concept_ids"] = sample.concept_ids;
  return j;
}

Json to_json(const SentenceRecord& record) {
  Json extractions = Json::array();
  for (const auto& e : record.extractions) extractions.push_back(to_json(e));
  Json j;
  j["sentence"] = record.sentence;
  j["task"] = to_string(record.task);
  j["extractions"] = extractions;
  return j;
}

SentenceRecord sentence_record_from_json(const Json& j) {
  SentenceRecord record;
  record.sentence = j.value("sentence", std::string{});
  record.task = task_from_string(j.value("task", std::string{"NER"}));
  if (j.contains("extractions")) {
    for (const auto& e : j.at("extractions")) {
      record.extractions.push_back(extraction_from_json(e));
    }
  }
  return record;
}

Json to_json(const EvalReport& report) {
  Json j;
  j["task"] = to_string(report.task);
  j["tp"] = report.tp;
  j["fp"] = report.fp;
  j["fn"] = report.fn;
  j["precision"] = report.precision;
  j["recall"] = report.recall;
  j["f1"] = report.f1;
  return j;
}

Json to_json(const CleaningReport& report) {
  Json j;
  j["input_count"] = report.input_count;
  j["kept_count"] = report.kept_count;
  j["dropped_untyped"] = report.dropped_untyped;
  j["dropped_disambiguation"] = report.dropped_disambiguation;
  j["dropped_blacklisted_role"] = report.dropped_blacklisted_role;
  return j;
}

Json to_json(const PostprocessReport& report) {
  Json j;
  j["induced"] = report.induced;
  j["dropped_type"] = report.dropped_type;
  j["dropped_text"] = report.dropped_text;
  j["rewritten"] = report.rewritten;
  return j;
}

Json to_json(const DatasetSchema& schema) {
  Json j;
  j["dataset_name"] = schema.dataset_name;
  j["concept_ids"] = schema.concept_ids;
  Json alignment = Json::object();
  for (const auto& [name, id] : schema.name_alignment) alignment[name] = id;
  j["name_alignment"] = alignment;
  return j;
}

DatasetSchema dataset_schema_from_json(const Json& j) {
  DatasetSchema schema;
  schema.dataset_name = j.value("dataset_name", std::string{});
  schema.concept_ids = j.at("concept_ids").get<std::vector<std::string>>();
  if (j.contains("name_alignment")) {
    for (const auto& [name, id] : j.at("name_alignment").items()) {
      schema.name_alignment.emplace(name, id.get<std::string>());
    }
  }
  return schema;
}

ClassMethodRule class_method_rule_from_json(const Json& j) {
  ClassMethodRule rule;
  rule.concept_id = j.at("concept").get<std::string>();
  rule.kind = class_method_kind_from_string(j.at("rule").get<std::string>());
  rule.word = j.at("word").get<std::string>();
  if (rule.word.empty()) throw DataError("class-method rule word is empty");
  return rule;
}

RawTriple raw_triple_from_json(const Json& j) {
  RawTriple row;
  row.subject = j.at("subject").get<std::string>();
  row.predicate = j.at("predicate").get<std::string>();
  row.object = j.at("object").get<std::string>();
  row.sentence = j.at("sentence").get<std::string>();
  if (j.contains("sub_properties") && !j.at("sub_properties").is_null()) {
    for (const auto& [key, value] : j.at("sub_properties").items()) {
      row.sub_properties.emplace_back(key, value.get<std::string>());
    }
  }
  return row;
}

void save_library_jsonl(const SchemaLibrary& library, const std::string& path) {
  std::vector<Json> lines;
  for (const auto& id : library.ids()) lines.push_back(to_json(library.get(id)));
  write_jsonl(path, lines);
}

SchemaLibrary load_library_jsonl(const std::string& path) {
  SchemaLibrary library;
  for (const auto& line : read_jsonl(path)) library.add(concept_from_json(line));
  return library;
}

std::vector<Json> read_jsonl(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path);
  std::vector<Json> lines;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      lines.push_back(Json::parse(line));
    } catch (const Json::parse_error& e) {
      throw DataError(path + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
  return lines;
}

void write_jsonl(const std::string& path, const std::vector<Json>& lines) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write " + path);
  for (const auto& line : lines) out << line.dump() << "\n";
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path);
  out << content;
}

std::string fnv1a_hex(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = digits[h & 0xf];
    h >>= 4;
  }
  return out;
}

}  // namespace knowforge
