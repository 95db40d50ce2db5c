#pragma once

#include <stdexcept>
#include <string>

namespace stm {

enum class ErrorKind {
  InvalidSpec,   // malformed or inconsistent group/rep description
  RankMismatch,  // operands live in different weight lattices
  Unsupported,   // valid data, operation not defined for it
  NotFound,      // unknown catalog name, missing file
  DataCorrupt,   // catalog file or table fails validation
  Internal,      // engine self-check failure (negative multiplicity, ...)
};

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

private:
  ErrorKind kind_;
};

[[noreturn]] inline void raise(ErrorKind k, const std::string& msg) {
  throw Error(k, msg);
}

}  // namespace stm
