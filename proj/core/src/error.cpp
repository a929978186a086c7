#include "dsfem/error.hpp"

namespace dsfem {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonConvex: return "NonConvex";
    case ErrorCode::Degenerate: return "Degenerate";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::BadSubdivision: return "BadSubdivision";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::NonConforming: return "NonConforming";
    case ErrorCode::UnsupportedOrder: return "UnsupportedOrder";
    case ErrorCode::SingularExpansion: return "SingularExpansion";
    case ErrorCode::SingularDoFMatrix: return "SingularDoFMatrix";
    case ErrorCode::SingularLocalBlock: return "SingularLocalBlock";
    case ErrorCode::NonPositiveError: return "NonPositiveError";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

namespace {
std::string decorate(ErrorCode code, const std::string& what, int line) {
  std::string msg(to_string(code));
  if (line > 0) msg += " (line " + std::to_string(line) + ")";
  msg += ": ";
  msg += what;
  return msg;
}
}  // namespace

Error::Error(ErrorCode code, const std::string& what, int line)
    : std::runtime_error(decorate(code, what, line)), code_(code), line_(line) {}

}  // namespace dsfem
