#include "knowforge/client.hpp"

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <exception>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "knowforge/errors.hpp"

namespace knowforge {

namespace {

struct SplitUrl {
  std::string host;  // scheme://host:port
  std::string path;  // begins with '/'
};

SplitUrl split_url(const std::string& base_url) {
  if (base_url.empty()) throw ConfigError("endpoint base_url is empty");
  const std::size_t scheme = base_url.find("://");
  const std::size_t path_start =
      base_url.find('/', scheme == std::string::npos ? 0 : scheme + 3);
  if (path_start == std::string::npos) return {base_url, "/"};
  return {base_url.substr(0, path_start), base_url.substr(path_start)};
}

}  // namespace

EndpointConfig endpoint_from_env() {
  EndpointConfig config;
  if (const char* url = std::getenv("KNOWFORGE_ENDPOINT")) config.base_url = url;
  if (const char* token = std::getenv("KNOWFORGE_TOKEN")) config.auth_token = token;
  return config;
}

std::string build_prompt(const TrainingSample& sample,
                         const std::vector<TrainingSample>& few_shot) {
  const Segment* instruction = sample.segment(SegmentRole::Instruction);
  const Segment* input = sample.segment(SegmentRole::Input);
  if (instruction == nullptr || instruction->text.empty()) {
    throw MalformedSampleError("sample has no instruction segment");
  }
  if (input == nullptr || input->text.empty()) {
    throw MalformedSampleError("sample has no input segment");
  }
  std::string prompt;
  for (const auto& example : few_shot) {
    prompt += compose_sample_text(example, true);
    prompt += "\n\n";
  }
  prompt += compose_sample_text(sample, false);
  prompt += "\n\nresults = [";
  return prompt;
}

std::string request_body(const std::string& prompt, const DecodeConfig& decode) {
  nlohmann::ordered_json body;
  body["prompt"] = prompt;
  body["temperature"] = decode.temperature;
  body["max_tokens"] = decode.max_output_tokens;
  return body.dump();
}

std::string complete(const std::string& prompt, const EndpointConfig& endpoint,
                     const DecodeConfig& decode) {
  const SplitUrl url = split_url(endpoint.base_url);
  httplib::Client client(url.host);
  const auto seconds = static_cast<time_t>(endpoint.timeout_seconds);
  const auto micros = static_cast<time_t>(
      (endpoint.timeout_seconds - static_cast<double>(seconds)) * 1e6);
  client.set_connection_timeout(seconds, micros);
  client.set_read_timeout(seconds, micros);
  client.set_write_timeout(seconds, micros);

  httplib::Headers headers;
  if (!endpoint.auth_token.empty()) {
    headers.emplace("Authorization", "Bearer " + endpoint.auth_token);
  }
  const std::string body = request_body(prompt, decode);

  std::string last_error;
  bool timed_out = false;
  for (int attempt = 0; attempt <= endpoint.retries; ++attempt) {
    if (attempt > 0) {
      std::this_thread::sleep_for(
          std::chrono::milliseconds(endpoint.backoff_ms << (attempt - 1)));
    }
    httplib::Result result = client.Post(url.path, headers, body, "application/json");
    if (!result) {
      timed_out = result.error() == httplib::Error::ConnectionTimeout ||
                  result.error() == httplib::Error::Read ||
                  result.error() == httplib::Error::Write;
      last_error = httplib::to_string(result.error());
      continue;  // transport errors are transient
    }
    timed_out = false;
    if (result->status >= 500) {
      last_error = "server returned status " + std::to_string(result->status);
      continue;
    }
    if (result->status != 200) {
      throw EndpointError("endpoint returned status " + std::to_string(result->status));
    }
    try {
      const auto parsed = nlohmann::json::parse(result->body);
      if (parsed.contains("completion")) return parsed.at("completion").get<std::string>();
      if (parsed.contains("text")) return parsed.at("text").get<std::string>();
      throw EndpointError("response has neither 'completion' nor 'text' field");
    } catch (const nlohmann::json::parse_error& e) {
      throw EndpointError(std::string("response is not JSON: ") + e.what());
    }
  }
  if (timed_out) throw TimeoutError("endpoint timed out: " + last_error);
  throw EndpointError("endpoint failed after " + std::to_string(endpoint.retries + 1) +
                      " attempts: " + last_error);
}

std::vector<std::string> complete_batch(const std::vector<std::string>& prompts,
                                        const EndpointConfig& endpoint,
                                        const DecodeConfig& decode) {
  std::vector<std::string> results(prompts.size());
  std::vector<std::exception_ptr> failures(prompts.size());
  std::atomic<std::size_t> cursor{0};

  const std::size_t workers = std::min<std::size_t>(
      prompts.size(), static_cast<std::size_t>(std::max(1, endpoint.concurrency)));
  std::vector<std::thread> threads;
  threads.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    threads.emplace_back([&] {
      for (;;) {
        const std::size_t i = cursor.fetch_add(1);
        if (i >= prompts.size()) return;
        try {
          results[i] = complete(prompts[i], endpoint, decode);
        } catch (...) {
          failures[i] = std::current_exception();
        }
      }
    });
  }
  for (auto& t : threads) t.join();
  for (const auto& failure : failures) {
    if (failure) std::rethrow_exception(failure);
  }
  return results;
}

}  // namespace knowforge
