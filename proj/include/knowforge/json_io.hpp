#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "knowforge/codegen.hpp"
#include "knowforge/evaluator.hpp"
#include "knowforge/extraction.hpp"
#include "knowforge/library_builder.hpp"
#include "knowforge/postprocess.hpp"
#include "knowforge/schema.hpp"

namespace knowforge {

// Insertion-ordered JSON keeps field and role order stable, which the
// byte-reproducibility guarantees depend on.
using Json = nlohmann::ordered_json;

Json to_json(const Concept& concept_def);
Concept concept_from_json(const Json& j);

Json to_json(const Extraction& extraction);
Extraction extraction_from_json(const Json& j);

Json to_json(const TrainingSample& sample);
TrainingSample training_sample_from_json(const Json& j);

Json to_json(const PretrainSample& sample);

// One line of the gold/pred interchange: a sentence with its extractions.
struct SentenceRecord {
  std::string sentence;
  Task task = Task::NER;
  std::vector<Extraction> extractions;
};

Json to_json(const SentenceRecord& record);
SentenceRecord sentence_record_from_json(const Json& j);

Json to_json(const EvalReport& report);
Json to_json(const CleaningReport& report);
Json to_json(const PostprocessReport& report);
Json to_json(const DatasetSchema& schema);
DatasetSchema dataset_schema_from_json(const Json& j);
ClassMethodRule class_method_rule_from_json(const Json& j);
RawTriple raw_triple_from_json(const Json& j);

void save_library_jsonl(const SchemaLibrary& library, const std::string& path);
SchemaLibrary load_library_jsonl(const std::string& path);

std::vector<Json> read_jsonl(const std::string& path);
void write_jsonl(const std::string& path, const std::vector<Json>& lines);
std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

// 16 hex digits of FNV-1a, used for config hashes in output manifests.
std::string fnv1a_hex(const std::string& text);

}  // namespace knowforge
