#pragma once

#include <stdexcept>
#include <string>

namespace motkit {

// Categories map one-to-one onto the C API status codes and the CLI exit codes.
enum class ErrorKind {
  kArgument,       // malformed or inconsistent input
  kParse,          // unreadable JSON / file
  kOrder,          // marginals not in convex order
  kPrecondition,   // operation precondition violated (e.g. non-martingale-supporting support)
  kDomain,         // evaluation outside the domain of a transform or triple
  kVerification,   // an internal postcondition check failed
  kUnsupported,    // unsupported dimension or configuration
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline Error argument_error(const std::string& what) { return Error(ErrorKind::kArgument, what); }
inline Error parse_error(const std::string& what) { return Error(ErrorKind::kParse, what); }
inline Error precondition_error(const std::string& what) {
  return Error(ErrorKind::kPrecondition, what);
}
inline Error domain_error(const std::string& what) { return Error(ErrorKind::kDomain, what); }
inline Error verification_error(const std::string& what) {
  return Error(ErrorKind::kVerification, what);
}
inline Error unsupported_error(const std::string& what) {
  return Error(ErrorKind::kUnsupported, what);
}

}  // namespace motkit
