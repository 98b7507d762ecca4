#pragma once

#include <stdexcept>
#include <string>

namespace framemap {

// Broad failure classes. The CLI maps these to exit codes (Infeasible -> 2,
// everything else -> 1), and tests match on the kind rather than the text.
enum class ErrorKind {
  Parse,         // malformed input bytes
  Format,        // structurally valid input violating a format contract
  Domain,        // value outside its legal domain
  Argument,      // bad call argument
  State,         // operation not valid in the current state
  Uniqueness,    // duplicate key
  Completeness,  // required companion data missing
  Resolution,    // endpoint spec did not resolve to a document
  Order,         // chronological order violated
  Infeasible,    // linear program has no feasible point
  Decode,        // solution could not be decoded into a map
  Io,            // filesystem problem
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

}  // namespace framemap
