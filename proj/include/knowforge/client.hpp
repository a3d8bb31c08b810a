#pragma once

#include <optional>
#include <string>
#include <vector>

#include "knowforge/codegen.hpp"

namespace knowforge {

enum class DecodeStrategy { Greedy };

struct DecodeConfig {
  double temperature = 0.0;
  int max_output_tokens = 640;
  DecodeStrategy strategy = DecodeStrategy::Greedy;
};

struct EndpointConfig {
  std::string base_url;
  std::string auth_token;
  double timeout_seconds = 30.0;
  int retries = 2;
  int backoff_ms = 200;  // doubled per attempt
  int concurrency = 4;
};

// KNOWFORGE_ENDPOINT / KNOWFORGE_TOKEN.
EndpointConfig endpoint_from_env();

// Few-shot examples in full (including their output), then the target's
// schema block, instruction, and input, then the `results = [` generation
// prefix. The target's own output never appears.
std::string build_prompt(const TrainingSample& sample,
                         const std::vector<TrainingSample>& few_shot);

// POST {prompt, temperature, max_tokens} to the endpoint; returns the raw
// completion text. Transient failures retry with exponential backoff.
std::string complete(const std::string& prompt, const EndpointConfig& endpoint,
                     const DecodeConfig& decode);

// complete() over many prompts with at most endpoint.concurrency in flight;
// results keep prompt order.
std::vector<std::string> complete_batch(const std::vector<std::string>& prompts,
                                        const EndpointConfig& endpoint,
                                        const DecodeConfig& decode);

// The JSON request body complete() sends, exposed for tests.
std::string request_body(const std::string& prompt, const DecodeConfig& decode);

}  // namespace knowforge
