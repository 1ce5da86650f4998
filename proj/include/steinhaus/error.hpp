#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace steinhaus {

enum class ErrorCode {
  NotPrime,
  NotInvertible,
  InvalidModulus,
  InvalidDivisor,
  IncompleteMap,
  UnsupportedModulus,
  CosetCoverage,
  NotOnSphere,
  NotRepresentable,
  InvalidArgument,
  ParseError,
};

std::string_view to_string(ErrorCode code);

/// Exception carrying a machine-checkable error category.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace steinhaus
