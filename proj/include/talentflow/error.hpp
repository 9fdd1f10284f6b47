#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace talentflow {

enum class ErrorCode {
  kInvalidLabel,
  kInvalidDate,
  kIoError,
  kMalformed,
  kFutureJob,
  kInsufficientTail,
  kValidation,
  kUsage,
};

std::string_view error_name(ErrorCode code);

// Every failure surfaced by the library carries one of the codes above; the
// CLI prints `<NAME>: <message>` and exits nonzero.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_name(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace talentflow
