#pragma once

#include <stdexcept>
#include <string>

namespace o1kepler {

/// Broad failure classes. The CLI maps these onto exit codes.
enum class ErrorKind {
  parameter,  // argument outside its documented range
  domain,     // evaluation point outside the function's domain
  invariant,  // a domain type would be constructed in an invalid state
  overflow,   // exact integer arithmetic would overflow
  numerical,  // a factorization or eigen-decomposition failed
  accuracy,   // requested accuracy cannot be delivered with the given resources
  resource,   // memory/size budget exceeded
  guard,      // truncated Fock space too small for an exact identity
};

const char* to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

inline void require(bool cond, ErrorKind kind, const std::string& what) {
  if (!cond) fail(kind, what);
}

}  // namespace o1kepler
