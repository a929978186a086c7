#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace dsfem {

enum class ErrorCode {
  NonConvex,
  Degenerate,
  NoConvergence,
  BadSubdivision,
  ParseError,
  NonConforming,
  UnsupportedOrder,
  SingularExpansion,
  SingularDoFMatrix,
  SingularLocalBlock,
  NonPositiveError,
  InvalidArgument,
};

std::string_view to_string(ErrorCode code);

/// Exception carrying a machine-checkable error code. Parse errors also
/// record the offending (1-based) line.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what, int line = 0);

  ErrorCode code() const noexcept { return code_; }
  int line() const noexcept { return line_; }

 private:
  ErrorCode code_;
  int line_;
};

}  // namespace dsfem
