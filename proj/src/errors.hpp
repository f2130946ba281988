#pragma once

#include <stdexcept>
#include <string>

namespace ermat {

enum class ErrorCode {
  InvalidArgument,
  Domain,
  Capacity,
  Solver,
  Io,
  Parse,
  Unsupported,
  Internal,
};

// Library-wide error type. The C API maps ErrorCode onto its status enum.
class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& msg) {
  throw Error(code, msg);
}

}  // namespace ermat
