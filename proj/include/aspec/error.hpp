#pragma once

#include <stdexcept>
#include <string>

namespace aspec {

enum class Errc {
  precondition_violated,
  empty_index_set,
  alphabet_mismatch,
  cap_exceeded,
  gap_violated,
  not_applicable,
  no_admissible_extension,
  parse_error,
  validation_error,
  invalid_certificate,
  trace_failed,
};

inline const char* errc_name(Errc c) {
  switch (c) {
    case Errc::precondition_violated: return "PreconditionViolated";
    case Errc::empty_index_set: return "EmptyIndexSet";
    case Errc::alphabet_mismatch: return "AlphabetMismatch";
    case Errc::cap_exceeded: return "CapExceeded";
    case Errc::gap_violated: return "GapViolated";
    case Errc::not_applicable: return "NotApplicable";
    case Errc::no_admissible_extension: return "NoAdmissibleExtension";
    case Errc::parse_error: return "ParseError";
    case Errc::validation_error: return "ValidationError";
    case Errc::invalid_certificate: return "InvalidCertificate";
    case Errc::trace_failed: return "TraceFailed";
  }
  return "UnknownError";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void raise(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace aspec
