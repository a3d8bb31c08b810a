#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "knowforge/extraction.hpp"

namespace knowforge {

struct EvalReport {
  Task task = Task::NER;
  std::uint64_t tp = 0;
  std::uint64_t fp = 0;
  std::uint64_t fn = 0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

// Span-based micro-F1. Matching units: NER (type, span); RE (type, head
// span, tail span); ED (type, trigger); EAE (event type, role, argument
// span). Both sides are deduplicated per sentence before counting.
EvalReport micro_f1(Task task, const std::vector<std::vector<Extraction>>& gold,
                    const std::vector<std::vector<Extraction>>& pred);

// The deduplicated matching-unit keys of one sentence; exposed so callers
// and tests can reuse the exact matching definition.
std::vector<std::string> matching_units(Task task, const std::vector<Extraction>& extractions);

struct BenchmarkSpec {
  std::uint64_t scale_factor = 14;  // s >= 1; 14 for NER, 4 for RE
  std::uint64_t base_seed = 42;
};

struct BenchmarkSample {
  std::string id;
  std::vector<std::string> types;  // empty = fully negative pseudo-type
};

struct BenchmarkResult {
  std::vector<std::size_t> selected;              // indices, original order
  std::map<std::string, std::uint64_t> per_type_counts;  // pre-dedup draws
};

// ceil(x/s) samples per type, drawn without replacement with a per-type
// seed; empty samples form one pseudo-type; duplicates removed; original
// dataset order preserved.
BenchmarkResult sample_benchmark(const std::vector<BenchmarkSample>& dataset,
                                 const BenchmarkSpec& spec);

// Per-type |proportion(subset) - proportion(original)|.
std::map<std::string, double> distribution_check(const std::vector<BenchmarkSample>& original,
                                                 const std::vector<BenchmarkSample>& subset);

}  // namespace knowforge
