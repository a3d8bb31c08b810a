#include "knowforge/evaluator.hpp"

#include <algorithm>
#include <set>

#include "knowforge/errors.hpp"
#include "knowforge/rng.hpp"

namespace knowforge {

namespace {

constexpr char kSep = '\x1f';
constexpr const char* kEmptyPseudoType = "\x1f<empty>";

std::string unit_key(std::initializer_list<const std::string*> parts) {
  std::string key;
  for (const std::string* p : parts) {
    key += *p;
    key += kSep;
  }
  return key;
}

}  // namespace

std::vector<std::string> matching_units(Task task, const std::vector<Extraction>& extractions) {
  const ConceptKind kind = kind_for(task);
  std::set<std::string> units;
  static const std::string empty;
  for (const auto& e : extractions) {
    if (e.kind != kind) continue;
    switch (task) {
      case Task::NER:
        units.insert(unit_key({&e.concept_id, &e.span}));
        break;
      case Task::RE:
        units.insert(unit_key({&e.concept_id, &e.head().span, &e.tail().span}));
        break;
      case Task::ED: {
        const std::string& trigger = e.trigger ? *e.trigger : empty;
        units.insert(unit_key({&e.concept_id, &trigger}));
        break;
      }
      case Task::EAE:
        for (const auto& role : e.roles) {
          for (const auto& value : role.values) {
            units.insert(unit_key({&e.concept_id, &role.role, &value.span}));
          }
        }
        break;
    }
  }
  return {units.begin(), units.end()};
}

EvalReport micro_f1(Task task, const std::vector<std::vector<Extraction>>& gold,
                    const std::vector<std::vector<Extraction>>& pred) {
  if (gold.size() != pred.size()) throw LengthMismatchError(gold.size(), pred.size());

  EvalReport report;
  report.task = task;
  for (std::size_t i = 0; i < gold.size(); ++i) {
    const std::vector<std::string> gold_units = matching_units(task, gold[i]);
    const std::vector<std::string> pred_units = matching_units(task, pred[i]);
    std::vector<std::string> common;
    std::set_intersection(gold_units.begin(), gold_units.end(), pred_units.begin(),
                          pred_units.end(), std::back_inserter(common));
    report.tp += common.size();
    report.fp += pred_units.size() - common.size();
    report.fn += gold_units.size() - common.size();
  }

  const auto tp = static_cast<double>(report.tp);
  if (report.tp + report.fp > 0) report.precision = tp / static_cast<double>(report.tp + report.fp);
  if (report.tp + report.fn > 0) report.recall = tp / static_cast<double>(report.tp + report.fn);
  if (report.precision + report.recall > 0) {
    report.f1 = 2.0 * report.precision * report.recall / (report.precision + report.recall);
  }
  return report;
}

BenchmarkResult sample_benchmark(const std::vector<BenchmarkSample>& dataset,
                                 const BenchmarkSpec& spec) {
  if (spec.scale_factor < 1) throw ConfigError("benchmark scale factor must be >= 1");

  // Indices per type, in dataset order; empty samples form one pseudo-type.
  std::map<std::string, std::vector<std::size_t>> by_type;
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    const auto& sample = dataset[i];
    if (sample.types.empty()) {
      by_type[kEmptyPseudoType].push_back(i);
      continue;
    }
    std::set<std::string> distinct(sample.types.begin(), sample.types.end());
    for (const auto& type : distinct) by_type[type].push_back(i);
  }

  BenchmarkResult result;
  std::set<std::size_t> chosen;
  for (const auto& [type, indices] : by_type) {
    const std::uint64_t x = indices.size();
    const std::uint64_t k = (x + spec.scale_factor - 1) / spec.scale_factor;
    const std::string label = type == kEmptyPseudoType ? "<empty>" : type;
    result.per_type_counts[label] = k;
    Rng rng(mix_seed(spec.base_seed, type));
    for (const std::size_t pick : sample_indices(indices.size(), k, rng)) {
      chosen.insert(indices[pick]);
    }
  }
  result.selected.assign(chosen.begin(), chosen.end());
  return result;
}

std::map<std::string, double> distribution_check(const std::vector<BenchmarkSample>& original,
                                                 const std::vector<BenchmarkSample>& subset) {
  auto proportions = [](const std::vector<BenchmarkSample>& samples) {
    std::map<std::string, double> counts;
    double total = 0;
    for (const auto& sample : samples) {
      std::set<std::string> distinct(sample.types.begin(), sample.types.end());
      if (distinct.empty()) distinct.insert("<empty>");
      for (const auto& type : distinct) {
        counts[type] += 1.0;
        total += 1.0;
      }
    }
    if (total > 0) {
      for (auto& [type, count] : counts) count /= total;
    }
    return counts;
  };

  const auto orig = proportions(original);
  const auto sub = proportions(subset);
  std::map<std::string, double> deltas;
  for (const auto& [type, p] : orig) {
    const double q = sub.count(type) != 0 ? sub.at(type) : 0.0;
    deltas[type] = std::abs(p - q);
  }
  for (const auto& [type, q] : sub) {
    if (orig.count(type) == 0) deltas[type] = q;
  }
  return deltas;
}

}  // namespace knowforge
