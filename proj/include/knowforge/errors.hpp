#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace knowforge {

// Exit-code classes used by the CLI: 1 data, 2 config, 3 endpoint.
enum class ErrorClass { Data = 1, Config = 2, Endpoint = 3 };

class Error : public std::runtime_error {
 public:
  Error(ErrorClass cls, std::string code, const std::string& message)
      : std::runtime_error(message), class_(cls), code_(std::move(code)) {}

  ErrorClass error_class() const { return class_; }
  const std::string& code() const { return code_; }

 private:
  ErrorClass class_;
  std::string code_;
};

class UnknownConceptError : public Error {
 public:
  explicit UnknownConceptError(const std::string& id)
      : Error(ErrorClass::Data, "UnknownConcept", "unknown concept: " + id) {}
};

class UnalignedNameError : public Error {
 public:
  explicit UnalignedNameError(std::vector<std::string> names)
      : Error(ErrorClass::Data, "UnalignedName", join(names)), names_(std::move(names)) {}

  const std::vector<std::string>& names() const { return names_; }

 private:
  static std::string join(const std::vector<std::string>& names) {
    std::string out = "unaligned dataset names:";
    for (const auto& n : names) out += " " + n;
    return out;
  }
  std::vector<std::string> names_;
};

class BudgetTooSmallError : public Error {
 public:
  explicit BudgetTooSmallError(const std::string& message)
      : Error(ErrorClass::Config, "BudgetTooSmall", message) {}
};

class MissingTriggerHintsError : public Error {
 public:
  MissingTriggerHintsError()
      : Error(ErrorClass::Data, "MissingTriggerHints",
              "EAE samples require trigger hints") {}
};

class MalformedSampleError : public Error {
 public:
  explicit MalformedSampleError(const std::string& message)
      : Error(ErrorClass::Data, "MalformedSample", message) {}
};

class LengthMismatchError : public Error {
 public:
  LengthMismatchError(std::size_t gold, std::size_t pred)
      : Error(ErrorClass::Data, "LengthMismatch",
              "gold has " + std::to_string(gold) + " sentences, pred has " +
                  std::to_string(pred)) {}
};

class ProviderUnavailableError : public Error {
 public:
  explicit ProviderUnavailableError(const std::string& message)
      : Error(ErrorClass::Data, "ProviderUnavailable", message) {}
};

class EndpointError : public Error {
 public:
  explicit EndpointError(const std::string& message)
      : Error(ErrorClass::Endpoint, "EndpointError", message) {}
  EndpointError(const std::string& code, const std::string& message)
      : Error(ErrorClass::Endpoint, code, message) {}
};

class TimeoutError : public EndpointError {
 public:
  explicit TimeoutError(const std::string& message)
      : EndpointError("Timeout", message) {}
};

class DataError : public Error {
 public:
  explicit DataError(const std::string& message)
      : Error(ErrorClass::Data, "DataError", message) {}
};

class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& message)
      : Error(ErrorClass::Config, "ConfigError", message) {}
};

}  // namespace knowforge
