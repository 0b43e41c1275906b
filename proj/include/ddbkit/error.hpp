#pragma once

#include <stdexcept>
#include <string>

namespace ddbkit {

// Failure categories. The CLI maps kSyntax to a usage error and everything
// else to a domain rejection.
enum class Errc {
  kSyntax,
  kOutOfRange,
  kRingMismatch,
  kUnboundedRing,
  kRingTooSmall,
  kDomain,
  kUnsupported,
  kOutOfScope,
};

inline const char* errc_name(Errc code) {
  switch (code) {
    case Errc::kSyntax: return "syntax";
    case Errc::kOutOfRange: return "out_of_range";
    case Errc::kRingMismatch: return "ring_mismatch";
    case Errc::kUnboundedRing: return "unbounded_ring";
    case Errc::kRingTooSmall: return "ring_too_small";
    case Errc::kDomain: return "domain";
    case Errc::kUnsupported: return "unsupported";
    case Errc::kOutOfScope: return "out_of_scope";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace ddbkit
