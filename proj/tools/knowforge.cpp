// knowforge: schema compilation, training-data generation, result parsing,
// post-processing, scoring, benchmark sampling, and endpoint-backed runs.

#include <CLI11.hpp>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "knowforge/client.hpp"
#include "knowforge/codegen.hpp"
#include "knowforge/errors.hpp"
#include "knowforge/evaluator.hpp"
#include "knowforge/json_io.hpp"
#include "knowforge/library_builder.hpp"
#include "knowforge/parser.hpp"
#include "knowforge/postprocess.hpp"
#include "knowforge/rng.hpp"
#include "knowforge/schema.hpp"
#include "knowforge/version.hpp"

namespace kf = knowforge;
using kf::Json;

namespace {

struct ManifestInfo {
  std::string command;
  std::uint64_t seed = 0;
  std::string config;  // canonical flag dump, hashed into the manifest
};

void write_manifest(const std::string& output_path, const ManifestInfo& info) {
  Json manifest;
  manifest["tool"] = "knowforge";
  manifest["version"] = kf::kVersion;
  manifest["command"] = info.command;
  manifest["seed"] = info.seed;
  manifest["config_hash"] = kf::fnv1a_hex(info.config);
  manifest["config"] = info.config;
  kf::write_file(output_path + ".manifest.json", manifest.dump(2) + "\n");
}

std::vector<std::pair<std::string, std::string>> load_edges_tsv(const std::string& path) {
  std::vector<std::pair<std::string, std::string>> edges;
  const std::string text = kf::read_file(path);
  std::size_t start = 0;
  std::size_t line_no = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string::npos) end = text.size();
    const std::string line = text.substr(start, end - start);
    ++line_no;
    if (!line.empty()) {
      const std::size_t tab = line.find('\t');
      if (tab == std::string::npos) {
        throw kf::DataError(path + ":" + std::to_string(line_no) +
                            ": expected child<TAB>parent");
      }
      edges.emplace_back(line.substr(0, tab), line.substr(tab + 1));
    }
    if (end == text.size()) break;
    start = end + 1;
  }
  return edges;
}

kf::EntityTypingMap load_typing_jsonl(const std::string& path) {
  kf::EntityTypingMap typing;
  for (const auto& line : kf::read_jsonl(path)) {
    typing[line.at("entity").get<std::string>()] =
        line.at("types").get<std::vector<std::string>>();
  }
  return typing;
}

Json typed_row_to_json(const kf::TypedRow& row) {
  Json j;
  j["subject"] = Json{{"name", row.subject.name}, {"types", row.subject.types}};
  j["object"] = Json{{"name", row.object.name}, {"types", row.object.types}};
  j["predicate"] = row.predicate;
  j["sentence"] = row.sentence;
  Json props = Json::object();
  for (const auto& [key, value] : row.sub_properties) props[key] = value;
  j["sub_properties"] = props;
  j["is_event"] = row.is_event;
  return j;
}

kf::TypedRow typed_row_from_json(const Json& j) {
  kf::TypedRow row;
  row.subject.name = j.at("subject").at("name").get<std::string>();
  row.subject.types = j.at("subject").at("types").get<std::vector<std::string>>();
  row.object.name = j.at("object").at("name").get<std::string>();
  row.object.types = j.at("object").at("types").get<std::vector<std::string>>();
  row.predicate = j.at("predicate").get<std::string>();
  row.sentence = j.at("sentence").get<std::string>();
  if (j.contains("sub_properties")) {
    for (const auto& [key, value] : j.at("sub_properties").items()) {
      row.sub_properties.emplace_back(key, value.get<std::string>());
    }
  }
  row.is_event = j.value("is_event", false);
  return row;
}

std::vector<kf::ClassMethodRule> load_rules(const std::string& path) {
  std::vector<kf::ClassMethodRule> rules;
  for (const auto& line : kf::read_jsonl(path)) {
    rules.push_back(kf::class_method_rule_from_json(line));
  }
  return rules;
}

// ---------------------------------------------------------------- build-library

struct BuildLibraryArgs {
  std::string edges, corpus, typing, descriptions, out, corpus_out, report_out;
  std::uint64_t min_support = 1;
};

int cmd_build_library(const BuildLibraryArgs& args, const ManifestInfo& info) {
  std::vector<kf::RawTriple> corpus;
  for (const auto& line : kf::read_jsonl(args.corpus)) {
    corpus.push_back(kf::raw_triple_from_json(line));
  }
  std::map<kf::ConceptId, std::string> descriptions;
  if (!args.descriptions.empty()) {
    for (const auto& line : kf::read_jsonl(args.descriptions)) {
      descriptions[line.at("id").get<std::string>()] =
          line.at("description").get<std::string>();
    }
  }
  kf::StubDescriptionProvider stub;
  const auto build =
      kf::build_library(load_edges_tsv(args.edges), corpus, load_typing_jsonl(args.typing),
                        descriptions, stub, args.min_support);

  kf::save_library_jsonl(build.library, args.out);
  write_manifest(args.out, info);
  if (!args.corpus_out.empty()) {
    std::vector<Json> lines;
    for (const auto& row : build.corpus) lines.push_back(typed_row_to_json(row));
    kf::write_jsonl(args.corpus_out, lines);
    write_manifest(args.corpus_out, info);
  }

  Json report = kf::to_json(build.report);
  Json log = Json::array();
  for (const auto& v : build.log) {
    log.push_back(Json{{"concept", v.concept_id}, {"code", v.code}, {"message", v.message}});
  }
  report["log"] = log;
  report["concepts"] = build.library.size();
  const std::string report_path =
      args.report_out.empty() ? args.out + ".report.json" : args.report_out;
  kf::write_file(report_path, report.dump(2) + "\n");
  std::cout << report.dump() << "\n";

  for (const auto& v : kf::validate(build.library)) {
    std::cerr << "violation: " << v.concept_id << " " << v.code << ": " << v.message << "\n";
  }
  return 0;
}

// ---------------------------------------------------------------- compile-schema

struct CompileSchemaArgs {
  std::string library, out, event_style = "typed";
  std::vector<std::string> concepts;
  bool all = false;
  bool include_basics = false;
};

int cmd_compile_schema(const CompileSchemaArgs& args, const ManifestInfo& info) {
  const auto library = kf::load_library_jsonl(args.library);
  std::vector<kf::ConceptId> ids = args.concepts;
  if (args.all) ids = library.ids();
  if (ids.empty()) throw kf::ConfigError("no concepts selected; pass --concept or --all");

  const kf::EventDefStyle style = args.event_style == "argnames"
                                      ? kf::EventDefStyle::ArgNames
                                      : kf::EventDefStyle::TypedRoles;
  std::vector<std::string> defs;
  if (args.include_basics) {
    std::set<kf::ConceptKind> kinds;
    for (const auto& id : ids) kinds.insert(library.get(id).kind);
    if (kinds.count(kf::ConceptKind::Entity) || kinds.count(kf::ConceptKind::Relation)) {
      defs.push_back(kf::emit_basic_class_def(kf::ConceptKind::Entity));
    }
    if (kinds.count(kf::ConceptKind::Relation)) {
      defs.push_back(kf::emit_basic_class_def(kf::ConceptKind::Relation));
    }
    if (kinds.count(kf::ConceptKind::Event)) {
      defs.push_back(kf::emit_basic_class_def(kf::ConceptKind::Event, style));
    }
  }
  for (const auto& id : ids) {
    defs.push_back(kf::emit_class_def(library.get(id), library, style));
  }
  std::string text;
  for (std::size_t i = 0; i < defs.size(); ++i) {
    if (i != 0) text += "\n\n";
    text += defs[i];
  }
  text += "\n";
  if (args.out.empty()) {
    std::cout << text;
  } else {
    kf::write_file(args.out, text);
    write_manifest(args.out, info);
  }
  return 0;
}

// ---------------------------------------------------------------- gen-pretrain

struct GenPretrainArgs {
  std::string library, corpus, out, mode = "sentence_first";
  std::uint64_t seed = 0;
  std::size_t token_budget = 2048;
  bool schema_blocks_only = false;
};

// One instance sample per (row, concept): entity samples per mention type,
// then a relation or event sample for the row's predicate.
std::vector<kf::PretrainSample> instance_samples_for_row(const kf::TypedRow& row,
                                                         const kf::SchemaLibrary& library,
                                                         kf::ImportMode mode) {
  std::vector<kf::PretrainSample> out;
  std::vector<std::pair<kf::ConceptId, std::string>> mention_types;
  for (const auto* side : {&row.subject, &row.object}) {
    for (const auto& type : side->types) {
      if (library.contains(type)) mention_types.emplace_back(type, side->name);
    }
  }
  std::set<kf::ConceptId> seen;
  for (const auto& [type, _] : mention_types) {
    if (!seen.insert(type).second) continue;
    std::vector<kf::Extraction> mentions;
    for (const auto& [t, name] : mention_types) {
      if (t == type) mentions.push_back(kf::make_entity(t, name));
    }
    out.push_back(kf::emit_instance_code(row.sentence, mentions, mode, library));
  }

  if (row.is_event && library.contains(row.predicate)) {
    std::vector<kf::RoleFill> roles;
    for (const auto& [key, value] : row.sub_properties) {
      roles.push_back({kf::to_role_name(key),
                       {kf::make_entity(kf::kBasicEntity, value)}});
    }
    out.push_back(kf::emit_instance_code(
        row.sentence, {kf::make_event(row.predicate, std::nullopt, roles)}, mode, library));
  } else if (!row.is_event && library.contains(row.predicate)) {
    const auto head_type = row.subject.types.empty() ? kf::ConceptId(kf::kBasicEntity)
                                                     : row.subject.types.front();
    const auto tail_type = row.object.types.empty() ? kf::ConceptId(kf::kBasicEntity)
                                                    : row.object.types.front();
    out.push_back(kf::emit_instance_code(
        row.sentence,
        {kf::make_relation(row.predicate, kf::make_entity(head_type, row.subject.name),
                           kf::make_entity(tail_type, row.object.name))},
        mode, library));
  }
  return out;
}

int cmd_gen_pretrain(const GenPretrainArgs& args, const ManifestInfo& info) {
  const auto library = kf::load_library_jsonl(args.library);
  const kf::ImportMode mode = kf::import_mode_from_string(args.mode);

  std::vector<Json> lines;
  for (const auto& block :
       kf::emit_pretrain_schema_block(library, args.token_budget, args.seed)) {
    Json j = kf::to_json(block);
    j["kind"] = "schema_block";
    lines.push_back(std::move(j));
  }
  if (!args.schema_blocks_only) {
    if (args.corpus.empty()) {
      throw kf::ConfigError("gen-pretrain needs --corpus unless --schema-blocks-only");
    }
    for (const auto& line : kf::read_jsonl(args.corpus)) {
      const kf::TypedRow row = typed_row_from_json(line);
      for (const auto& sample : instance_samples_for_row(row, library, mode)) {
        Json j = kf::to_json(sample);
        j["kind"] = "instance";
        lines.push_back(std::move(j));
      }
    }
  }
  kf::write_jsonl(args.out, lines);
  write_manifest(args.out, info);
  std::cout << Json{{"samples", lines.size()}}.dump() << "\n";
  return 0;
}

// ---------------------------------------------------------------- gen-sft

struct GenSftArgs {
  std::string library, gold, out, style = "code", dataset_tag;
  std::uint64_t seed = 0;
  double fraction = 0.05;
  bool generic_instruction = false;
  bool concat = false;
};

std::vector<kf::TriggerHint> hints_for(const std::vector<kf::Extraction>& golden) {
  std::vector<kf::TriggerHint> hints;
  std::set<std::pair<kf::ConceptId, std::string>> seen;
  for (const auto& e : golden) {
    if (e.kind == kf::ConceptKind::Event && e.trigger &&
        seen.insert({e.concept_id, *e.trigger}).second) {
      hints.push_back({e.concept_id, *e.trigger});
    }
  }
  return hints;
}

int cmd_gen_sft(const GenSftArgs& args, const ManifestInfo& info) {
  const auto library = kf::load_library_jsonl(args.library);
  std::vector<kf::SentenceRecord> records;
  for (const auto& line : kf::read_jsonl(args.gold)) {
    records.push_back(kf::sentence_record_from_json(line));
  }

  kf::EmitOptions options;
  options.style = kf::prompt_style_from_string(args.style);
  options.generic_instruction = args.generic_instruction;
  const std::optional<std::string> tag =
      args.dataset_tag.empty() ? std::nullopt : std::optional<std::string>(args.dataset_tag);

  const auto negative_indices =
      kf::fully_negative_indices(records.size(), args.fraction, args.seed);
  std::set<std::size_t> fully_negative(negative_indices.begin(), negative_indices.end());

  std::vector<Json> lines;
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& record = records[i];
    const std::uint64_t sample_seed = kf::mix_seed(args.seed, i);
    kf::TrainingSample sample;
    if (fully_negative.count(i) != 0) {
      auto produced = kf::make_fully_negative({record.sentence}, library, record.task, 1.0,
                                              kf::mix_seed(args.seed, i), options, tag);
      sample = std::move(produced.front());
    } else {
      std::vector<kf::Extraction> golden = record.extractions;
      if (record.task == kf::Task::ED) {
        for (auto& e : golden) e.roles.clear();  // detection outputs are trigger-only
      }
      std::vector<kf::ConceptId> golden_ids;
      std::set<kf::ConceptId> seen;
      for (const auto& e : golden) {
        if (seen.insert(e.concept_id).second) golden_ids.push_back(e.concept_id);
      }
      const auto negatives = kf::sample_negative_classes(golden_ids, library, sample_seed);
      sample = kf::emit_instruction_sample(record.sentence, golden, negatives.ids,
                                           record.task, options.style, tag,
                                           hints_for(golden), library, sample_seed, options);
    }
    Json j = kf::to_json(sample);
    if (args.concat) {
      Json flat;
      flat["text"] = kf::compose_sample_text(sample, true);
      flat["task"] = kf::to_string(sample.task);
      flat["seed"] = sample.seed;
      j = std::move(flat);
    }
    lines.push_back(std::move(j));
  }
  kf::write_jsonl(args.out, lines);
  write_manifest(args.out, info);
  std::cout << Json{{"samples", lines.size()},
                    {"fully_negative", fully_negative.size()}}
                   .dump()
            << "\n";
  return 0;
}

// ---------------------------------------------------------------- parse

struct ParseArgs {
  std::string library, completions, dataset, out;
};

Json diagnostics_to_json(const std::vector<kf::Diagnostic>& diagnostics) {
  Json out = Json::array();
  for (const auto& d : diagnostics) {
    out.push_back(Json{{"severity", d.severity == kf::Severity::Error ? "error" : "warning"},
                       {"message", d.message},
                       {"begin", d.begin},
                       {"end", d.end}});
  }
  return out;
}

int cmd_parse(const ParseArgs& args, const ManifestInfo& info) {
  const auto library = kf::load_library_jsonl(args.library);
  std::optional<kf::DatasetSchema> dataset;
  if (!args.dataset.empty()) {
    dataset = kf::dataset_schema_from_json(Json::parse(kf::read_file(args.dataset)));
  }

  std::vector<Json> lines;
  std::size_t clean = 0;
  for (const auto& line : kf::read_jsonl(args.completions)) {
    const std::string text = line.contains("completion")
                                 ? line.at("completion").get<std::string>()
                                 : line.at("text").get<std::string>();
    const auto outcome =
        kf::parse_results(text, library, dataset ? &*dataset : nullptr);
    Json j;
    if (line.contains("sentence")) j["sentence"] = line.at("sentence");
    Json extractions = Json::array();
    for (const auto& e : outcome.extractions) extractions.push_back(kf::to_json(e));
    j["extractions"] = extractions;
    j["found_results"] = outcome.found_results;
    j["diagnostics"] = diagnostics_to_json(outcome.diagnostics);
    if (outcome.diagnostics.empty()) ++clean;
    lines.push_back(std::move(j));
  }
  kf::write_jsonl(args.out, lines);
  write_manifest(args.out, info);
  std::cout << Json{{"lines", lines.size()}, {"clean", clean}}.dump() << "\n";
  return 0;
}

// ---------------------------------------------------------------- postprocess

struct PostprocessArgs {
  std::string library, dataset, preds, rules, out, report_out;
};

int cmd_postprocess(const PostprocessArgs& args, const ManifestInfo& info) {
  const auto library = kf::load_library_jsonl(args.library);
  const auto dataset =
      kf::dataset_schema_from_json(Json::parse(kf::read_file(args.dataset)));
  std::vector<kf::ClassMethodRule> rules;
  if (!args.rules.empty()) rules = load_rules(args.rules);

  kf::PostprocessReport total;
  std::vector<Json> lines;
  for (const auto& line : kf::read_jsonl(args.preds)) {
    auto record = kf::sentence_record_from_json(line);
    std::vector<kf::Extraction> preds;
    for (auto& e : record.extractions) {
      const auto rewritten = kf::apply_class_methods(e, rules, record.sentence);
      if (!(rewritten == e)) total.rewritten++;
      preds.push_back(rewritten);
    }
    auto filtered = kf::filter_predictions(preds, dataset, library, record.sentence);
    total.induced += filtered.report.induced;
    total.dropped_type += filtered.report.dropped_type;
    total.dropped_text += filtered.report.dropped_text;
    record.extractions = std::move(filtered.kept);
    lines.push_back(kf::to_json(record));
  }
  kf::write_jsonl(args.out, lines);
  write_manifest(args.out, info);
  const Json report = kf::to_json(total);
  const std::string report_path =
      args.report_out.empty() ? args.out + ".report.json" : args.report_out;
  kf::write_file(report_path, report.dump(2) + "\n");
  std::cout << report.dump() << "\n";
  return 0;
}

// ---------------------------------------------------------------- eval

struct EvalArgs {
  std::string task = "NER", gold, pred, out;
};

int cmd_eval(const EvalArgs& args, const ManifestInfo& info) {
  std::vector<std::vector<kf::Extraction>> gold, pred;
  for (const auto& line : kf::read_jsonl(args.gold)) {
    gold.push_back(kf::sentence_record_from_json(line).extractions);
  }
  for (const auto& line : kf::read_jsonl(args.pred)) {
    pred.push_back(kf::sentence_record_from_json(line).extractions);
  }
  const auto report = kf::micro_f1(kf::task_from_string(args.task), gold, pred);
  const Json j = kf::to_json(report);
  if (!args.out.empty()) {
    kf::write_file(args.out, j.dump(2) + "\n");
    write_manifest(args.out, info);
  }
  std::cout << j.dump() << "\n";
  return 0;
}

// ---------------------------------------------------------------- sample-benchmark

struct SampleBenchmarkArgs {
  std::string dataset, out, manifest_out;
  std::uint64_t s = 14;
  std::uint64_t seed = 42;
};

int cmd_sample_benchmark(const SampleBenchmarkArgs& args, const ManifestInfo& info) {
  const auto lines = kf::read_jsonl(args.dataset);
  std::vector<kf::BenchmarkSample> samples;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const auto record = kf::sentence_record_from_json(lines[i]);
    std::set<std::string> types;
    for (const auto& e : record.extractions) types.insert(e.concept_id);
    samples.push_back({std::to_string(i), {types.begin(), types.end()}});
  }
  const auto result = kf::sample_benchmark(samples, {args.s, args.seed});

  std::vector<Json> subset;
  for (const auto i : result.selected) subset.push_back(lines[i]);
  kf::write_jsonl(args.out, subset);
  write_manifest(args.out, info);

  Json manifest;
  manifest["seed"] = args.seed;
  manifest["s"] = args.s;
  Json counts = Json::object();
  for (const auto& [type, k] : result.per_type_counts) counts[type] = k;
  manifest["per_type_counts"] = counts;
  manifest["selected"] = result.selected.size();
  const std::string manifest_path =
      args.manifest_out.empty() ? args.out + ".sampling.json" : args.manifest_out;
  kf::write_file(manifest_path, manifest.dump(2) + "\n");
  std::cout << manifest.dump() << "\n";
  return 0;
}

// ---------------------------------------------------------------- run

struct RunArgs {
  std::string library, samples, dataset, rules, endpoint_url, few_shot_file,
      out_dir = ".";
  std::uint64_t few_shot = 0;
  double temperature = 0.0;
  int max_tokens = 640;
  int retries = 2;
  double timeout = 30.0;
  int concurrency = 1;
};

int cmd_run(const RunArgs& args, const ManifestInfo& info) {
  const auto library = kf::load_library_jsonl(args.library);
  std::optional<kf::DatasetSchema> dataset;
  if (!args.dataset.empty()) {
    dataset = kf::dataset_schema_from_json(Json::parse(kf::read_file(args.dataset)));
  }
  std::vector<kf::ClassMethodRule> rules;
  if (!args.rules.empty()) rules = load_rules(args.rules);

  std::vector<kf::TrainingSample> samples;
  for (const auto& line : kf::read_jsonl(args.samples)) {
    samples.push_back(kf::training_sample_from_json(line));
  }

  // Examples come from a separate file when given; otherwise the leading
  // samples serve as examples and are excluded from evaluation.
  std::vector<kf::TrainingSample> few_shot;
  if (!args.few_shot_file.empty()) {
    for (const auto& line : kf::read_jsonl(args.few_shot_file)) {
      if (few_shot.size() == args.few_shot) break;
      few_shot.push_back(kf::training_sample_from_json(line));
    }
  } else if (args.few_shot > 0) {
    const std::size_t take = std::min<std::size_t>(args.few_shot, samples.size());
    few_shot.assign(samples.begin(), samples.begin() + static_cast<std::ptrdiff_t>(take));
    samples.erase(samples.begin(), samples.begin() + static_cast<std::ptrdiff_t>(take));
  }
  if (samples.empty()) throw kf::DataError("no samples to run");
  for (const auto& sample : samples) {
    if (sample.task != samples.front().task) {
      throw kf::DataError("run requires samples of a single task");
    }
  }

  kf::EndpointConfig endpoint = kf::endpoint_from_env();
  if (!args.endpoint_url.empty()) endpoint.base_url = args.endpoint_url;
  if (endpoint.base_url.empty()) {
    throw kf::ConfigError("no endpoint; pass --endpoint or set KNOWFORGE_ENDPOINT");
  }
  endpoint.retries = args.retries;
  endpoint.timeout_seconds = args.timeout;
  endpoint.concurrency = args.concurrency;
  kf::DecodeConfig decode;
  decode.temperature = args.temperature;
  decode.max_output_tokens = args.max_tokens;

  std::vector<std::string> prompts;
  for (const auto& sample : samples) prompts.push_back(kf::build_prompt(sample, few_shot));
  const auto completions = kf::complete_batch(prompts, endpoint, decode);

  const kf::Task task = samples.front().task;
  std::vector<std::vector<kf::Extraction>> gold, pred;
  std::vector<Json> completion_lines, pred_lines;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    // the prompt ended with the generation prefix; parse takes the last
    // results assignment, so completions that restate it still work
    const std::string text = "results = [\n" + completions[i];
    const auto outcome = kf::parse_results(text, library, dataset ? &*dataset : nullptr);

    std::vector<kf::Extraction> kept;
    kf::PostprocessReport report;
    std::vector<kf::Extraction> rewritten;
    for (const auto& e : outcome.extractions) {
      rewritten.push_back(kf::apply_class_methods(e, rules, samples[i].sentence));
    }
    if (dataset) {
      auto filtered =
          kf::filter_predictions(rewritten, *dataset, library, samples[i].sentence);
      kept = std::move(filtered.kept);
      report = filtered.report;
    } else {
      kept = std::move(rewritten);
    }

    gold.push_back(samples[i].golden);
    pred.push_back(kept);

    completion_lines.push_back(Json{{"sentence", samples[i].sentence},
                                    {"completion", completions[i]}});
    kf::SentenceRecord record{samples[i].sentence, task, pred.back()};
    Json pj = kf::to_json(record);
    pj["diagnostics"] = diagnostics_to_json(outcome.diagnostics);
    pj["postprocess"] = kf::to_json(report);
    pred_lines.push_back(std::move(pj));
  }

  kf::write_jsonl(args.out_dir + "/completions.jsonl", completion_lines);
  write_manifest(args.out_dir + "/completions.jsonl", info);
  kf::write_jsonl(args.out_dir + "/predictions.jsonl", pred_lines);
  write_manifest(args.out_dir + "/predictions.jsonl", info);

  const auto report = kf::micro_f1(task, gold, pred);
  const Json j = kf::to_json(report);
  kf::write_file(args.out_dir + "/eval.json", j.dump(2) + "\n");
  write_manifest(args.out_dir + "/eval.json", info);
  std::cout << j.dump() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Code-style schema toolkit for universal information extraction"};
  app.set_config("--config", "", "Read defaults from a TOML config file");
  app.require_subcommand(1);
  app.set_version_flag("--version", kf::kVersion);

  BuildLibraryArgs bl;
  auto* build_library = app.add_subcommand(
      "build-library", "Build a schema library and typed corpus from dump files");
  build_library->add_option("--edges", bl.edges, "SubclassOf edges TSV (child<TAB>parent)")
      ->required()->check(CLI::ExistingFile);
  build_library->add_option("--corpus", bl.corpus, "Raw triples JSONL")
      ->required()->check(CLI::ExistingFile);
  build_library->add_option("--typing", bl.typing, "Entity typing JSONL")
      ->required()->check(CLI::ExistingFile);
  build_library->add_option("--descriptions", bl.descriptions,
                            "Concept descriptions JSONL ({id, description})")
      ->check(CLI::ExistingFile);
  build_library->add_option("--min-support", bl.min_support,
                            "Constraint co-occurrence threshold");
  build_library->add_option("--out", bl.out, "Library JSONL output")->required();
  build_library->add_option("--corpus-out", bl.corpus_out, "Typed corpus JSONL output");
  build_library->add_option("--report-out", bl.report_out, "Cleaning report path");

  CompileSchemaArgs cs;
  auto* compile_schema =
      app.add_subcommand("compile-schema", "Emit class definitions for concepts");
  compile_schema->add_option("--library", cs.library)->required()->check(CLI::ExistingFile);
  compile_schema->add_option("--concept", cs.concepts, "Concept id (repeatable)");
  compile_schema->add_flag("--all", cs.all, "Emit every concept in the library");
  compile_schema->add_option("--event-style", cs.event_style, "typed | argnames")
      ->check(CLI::IsMember({"typed", "argnames"}));
  compile_schema->add_flag("--include-basics", cs.include_basics,
                           "Prepend the basic class definitions");
  compile_schema->add_option("--out", cs.out, "Output file (stdout when omitted)");

  GenPretrainArgs gp;
  auto* gen_pretrain = app.add_subcommand(
      "gen-pretrain", "Generate schema-definition blocks and instance codes");
  gen_pretrain->add_option("--library", gp.library)->required()->check(CLI::ExistingFile);
  gen_pretrain->add_option("--corpus", gp.corpus, "Typed corpus JSONL (build-library --corpus-out)");
  gen_pretrain->add_option("--mode", gp.mode, "import_first | sentence_first | whole");
  gen_pretrain->add_option("--token-budget", gp.token_budget);
  gen_pretrain->add_option("--seed", gp.seed);
  gen_pretrain->add_flag("--schema-blocks-only", gp.schema_blocks_only);
  gen_pretrain->add_option("--out", gp.out)->required();

  GenSftArgs gs;
  auto* gen_sft = app.add_subcommand(
      "gen-sft", "Generate instruction-tuning samples with negative sampling");
  gen_sft->add_option("--library", gs.library)->required()->check(CLI::ExistingFile);
  gen_sft->add_option("--gold", gs.gold, "Gold sentences JSONL")
      ->required()->check(CLI::ExistingFile);
  gen_sft->add_option("--seed", gs.seed);
  gen_sft->add_option("--fraction", gs.fraction, "Fully-negative sentence fraction");
  gen_sft->add_option("--style", gs.style, "code | ie")
      ->check(CLI::IsMember({"code", "ie"}));
  gen_sft->add_flag("--generic-instruction", gs.generic_instruction,
                    "Use the short generic task description");
  gen_sft->add_option("--dataset-tag", gs.dataset_tag, "Append `from DATASET <tag>`");
  gen_sft->add_flag("--concat", gs.concat, "Emit a single text field per sample");
  gen_sft->add_option("--out", gs.out)->required();

  ParseArgs pa;
  auto* parse = app.add_subcommand("parse", "Parse completions into extractions");
  parse->add_option("--library", pa.library)->required()->check(CLI::ExistingFile);
  parse->add_option("--completions", pa.completions)->required()->check(CLI::ExistingFile);
  parse->add_option("--dataset", pa.dataset, "Dataset schema JSON")->check(CLI::ExistingFile);
  parse->add_option("--out", pa.out)->required();

  PostprocessArgs pp;
  auto* postprocess = app.add_subcommand(
      "postprocess", "Superclass induction, type/text filtering, class methods");
  postprocess->add_option("--library", pp.library)->required()->check(CLI::ExistingFile);
  postprocess->add_option("--dataset", pp.dataset)->required()->check(CLI::ExistingFile);
  postprocess->add_option("--preds", pp.preds)->required()->check(CLI::ExistingFile);
  postprocess->add_option("--rules", pp.rules, "Class-method rules JSONL")
      ->check(CLI::ExistingFile);
  postprocess->add_option("--out", pp.out)->required();
  postprocess->add_option("--report-out", pp.report_out);

  EvalArgs ev;
  auto* eval = app.add_subcommand("eval", "Span-based micro-F1");
  eval->add_option("--task", ev.task)->check(CLI::IsMember({"NER", "RE", "ED", "EAE"}));
  eval->add_option("--gold", ev.gold)->required()->check(CLI::ExistingFile);
  eval->add_option("--pred", ev.pred)->required()->check(CLI::ExistingFile);
  eval->add_option("--out", ev.out);

  SampleBenchmarkArgs sb;
  auto* sample_benchmark =
      app.add_subcommand("sample-benchmark", "Stratified benchmark subsampling");
  sample_benchmark->add_option("--dataset", sb.dataset)->required()->check(CLI::ExistingFile);
  sample_benchmark->add_option("--s", sb.s, "Scale factor (>= 1)");
  sample_benchmark->add_option("--seed", sb.seed);
  sample_benchmark->add_option("--out", sb.out)->required();
  sample_benchmark->add_option("--manifest-out", sb.manifest_out);

  RunArgs rn;
  auto* run = app.add_subcommand("run", "Prompt, complete, parse, postprocess, eval");
  run->add_option("--library", rn.library)->required()->check(CLI::ExistingFile);
  run->add_option("--samples", rn.samples, "TrainingSample JSONL (gen-sft output)")
      ->required()->check(CLI::ExistingFile);
  run->add_option("--dataset", rn.dataset)->check(CLI::ExistingFile);
  run->add_option("--rules", rn.rules)->check(CLI::ExistingFile);
  run->add_option("--endpoint", rn.endpoint_url, "Completion endpoint URL");
  run->add_option("--few-shot", rn.few_shot, "Number of samples used as in-context examples");
  run->add_option("--few-shot-file", rn.few_shot_file,
                  "Take examples from this file instead of the run samples")
      ->check(CLI::ExistingFile);
  run->add_option("--temperature", rn.temperature);
  run->add_option("--max-tokens", rn.max_tokens);
  run->add_option("--retries", rn.retries);
  run->add_option("--timeout", rn.timeout);
  run->add_option("--concurrency", rn.concurrency);
  run->add_option("--out-dir", rn.out_dir);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help / --version
    std::cerr << Json{{"error", "ConfigError"}, {"message", e.what()}}.dump() << "\n";
    return 2;
  }

  ManifestInfo info;
  for (int i = 1; i < argc; ++i) {
    if (i > 1) info.config += " ";
    info.config += argv[i];
  }
  info.command = app.get_subcommands().front()->get_name();
  if (gen_pretrain->parsed()) info.seed = gp.seed;
  if (gen_sft->parsed()) info.seed = gs.seed;
  if (sample_benchmark->parsed()) info.seed = sb.seed;

  try {
    if (build_library->parsed()) return cmd_build_library(bl, info);
    if (compile_schema->parsed()) return cmd_compile_schema(cs, info);
    if (gen_pretrain->parsed()) return cmd_gen_pretrain(gp, info);
    if (gen_sft->parsed()) return cmd_gen_sft(gs, info);
    if (parse->parsed()) return cmd_parse(pa, info);
    if (postprocess->parsed()) return cmd_postprocess(pp, info);
    if (eval->parsed()) return cmd_eval(ev, info);
    if (sample_benchmark->parsed()) return cmd_sample_benchmark(sb, info);
    if (run->parsed()) return cmd_run(rn, info);
  } catch (const kf::Error& e) {
    std::cerr << Json{{"error", e.code()}, {"message", e.what()}}.dump() << "\n";
    return static_cast<int>(e.error_class());
  } catch (const std::exception& e) {
    std::cerr << Json{{"error", "InternalError"}, {"message", e.what()}}.dump() << "\n";
    return 1;
  }
  return 0;
}
