#pragma once

#include <stdexcept>
#include <string>

namespace cusplink {

// Every precondition / invariant violation carries a short machine-readable
// code (e.g. "NotHyperbolicCusp") plus a human diagnostic. The CLI maps any
// Error to exit code 2 and prints the code.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& what)
      : std::runtime_error(code + ": " + what), code_(std::move(code)) {}

  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

[[noreturn]] inline void fail(const char* code, const std::string& msg) {
  throw Error(code, msg);
}

}  // namespace cusplink
