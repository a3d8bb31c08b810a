#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "knowforge/extraction.hpp"
#include "knowforge/schema.hpp"

namespace knowforge {

enum class ImportMode { ImportFirst, SentenceFirst, Whole };
enum class PromptStyle { Code, IE };
enum class SegmentRole { SchemaDef, Instruction, Input, Output };

// Event constructors have two surface shapes: typed role parameters
// (argument-extraction samples) and an arg_names list on *args (detection
// samples).
enum class EventDefStyle { TypedRoles, ArgNames };

const char* to_string(ImportMode mode);
ImportMode import_mode_from_string(const std::string& s);
const char* to_string(PromptStyle style);
PromptStyle prompt_style_from_string(const std::string& s);
const char* to_string(SegmentRole role);
SegmentRole segment_role_from_string(const std::string& s);

struct Segment {
  SegmentRole role;
  std::string text;

  bool operator==(const Segment&) const = default;
};

struct TrainingSample {
  std::vector<Segment> segments;
  Task task = Task::NER;
  std::string sentence;
  std::vector<Extraction> golden;
  std::vector<ConceptId> negatives;
  std::optional<std::string> dataset_tag;
  std::uint64_t seed = 0;

  const Segment* segment(SegmentRole role) const;
};

struct PretrainSample {
  std::string text;
  ImportMode mode = ImportMode::SentenceFirst;
  std::vector<ConceptId> concept_ids;
};

struct NegativeDraw {
  std::vector<ConceptId> ids;
  bool pool_exhausted = false;  // pool was smaller than the requested count
};

struct TriggerHint {
  ConceptId concept_id;
  std::string trigger;
};

struct EmitOptions {
  PromptStyle style = PromptStyle::Code;
  // Use the short generic task description instead of the task-specific one.
  bool generic_instruction = false;
};

// Escapes `\` and `"` for embedding in emitted double-quoted strings.
std::string escape_code_string(const std::string& s);

std::string emit_class_def(const Concept& concept_def, const SchemaLibrary& library,
                           EventDefStyle event_style = EventDefStyle::TypedRoles);

// The Entity / Relation / Event base definitions that precede concept
// classes in a sample's schema block.
std::string emit_basic_class_def(ConceptKind kind,
                                 EventDefStyle event_style = EventDefStyle::TypedRoles);

// Packs shuffled class definitions into samples of at most `token_budget`
// whitespace-delimited tokens; every concept lands in exactly one sample.
std::vector<PretrainSample> emit_pretrain_schema_block(const SchemaLibrary& library,
                                                       std::size_t token_budget,
                                                       std::uint64_t rng_seed);

PretrainSample emit_instance_code(const std::string& sentence,
                                  const std::vector<Extraction>& extractions,
                                  ImportMode mode, const SchemaLibrary& library);

// max(1, round-half-up(0.2 * |golden|)) distractors of the same kind, drawn
// uniformly without replacement, never overlapping the golden ids.
NegativeDraw sample_negative_classes(const std::vector<ConceptId>& golden_ids,
                                     const SchemaLibrary& library, std::uint64_t seed);

TrainingSample emit_instruction_sample(const std::string& sentence,
                                       const std::vector<Extraction>& golden,
                                       const std::vector<ConceptId>& negatives,
                                       Task task, PromptStyle style,
                                       const std::optional<std::string>& dataset_tag,
                                       const std::vector<TriggerHint>& trigger_hints,
                                       const SchemaLibrary& library, std::uint64_t seed,
                                       const EmitOptions& options = {});

// floor(fraction * N) sentences become samples whose schema block holds five
// random classes none of which occur, with an empty results block.
std::vector<TrainingSample> make_fully_negative(const std::vector<std::string>& sentences,
                                                const SchemaLibrary& library, Task task,
                                                double fraction, std::uint64_t seed,
                                                const EmitOptions& options = {},
                                                const std::optional<std::string>& dataset_tag =
                                                    std::nullopt);

// Indices (ascending) of the sentences make_fully_negative turns into fully
// negative samples, so callers can splice them into a generated set.
std::vector<std::size_t> fully_negative_indices(std::size_t sentence_count, double fraction,
                                                std::uint64_t seed);

// Canonical concatenation of a sample's segments (schema block, blank line,
// instruction docstring, input line, blank line, output).
std::string compose_sample_text(const TrainingSample& sample, bool include_output);

// The deterministic class order used for a sample's schema block.
std::vector<ConceptId> schema_def_order(const std::vector<ConceptId>& class_ids,
                                        std::uint64_t seed);

}  // namespace knowforge
