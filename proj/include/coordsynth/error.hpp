#pragma once

#include <stdexcept>
#include <string>

namespace coordsynth {

/// Category of a failure; the CLI maps categories onto exit codes.
enum class ErrorKind {
  Alphabet,               ///< event-set containment or mismatch
  AttributeInconsistency, ///< same event name with different attributes
  Precondition,           ///< an operation's documented precondition is violated
  Parse,                  ///< malformed input file
  Resource,               ///< state or iteration ceiling exceeded
  Internal,               ///< a post-hoc self-check failed
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

  /// Same category, message prefixed with `context: `.
  Error with_context(const std::string& context) const {
    return Error(kind_, context + ": " + what());
  }

 private:
  ErrorKind kind_;
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Alphabet: return "alphabet";
    case ErrorKind::AttributeInconsistency: return "attribute-inconsistency";
    case ErrorKind::Precondition: return "precondition";
    case ErrorKind::Parse: return "parse";
    case ErrorKind::Resource: return "resource";
    case ErrorKind::Internal: return "internal";
  }
  return "unknown";
}

}  // namespace coordsynth
