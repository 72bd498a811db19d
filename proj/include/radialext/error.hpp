#pragma once

#include <stdexcept>
#include <string>

namespace radialext {

/// Failure categories surfaced by the library. The CLI maps these onto
/// process exit codes (config errors -> 2, domain errors -> 3).
enum class Fault {
  NonIntegrable,
  SingularAtOrigin,
  PoleAtOrigin,
  DomainViolation,
  NoBoundState,
  PoleHit,
  DeterminantZero,
  ZeroKappa,
  InvalidIndices,
  OriginEvaluation,
  NotSmoothEnough,
  OutOfSector,
  BadConfig,
  Internal,
};

class Error : public std::runtime_error {
 public:
  Error(Fault fault, const std::string& what)
      : std::runtime_error(what), fault_(fault) {}

  Fault fault() const noexcept { return fault_; }

 private:
  Fault fault_;
};

inline const char* fault_name(Fault f) {
  switch (f) {
    case Fault::NonIntegrable: return "NonIntegrable";
    case Fault::SingularAtOrigin: return "SingularAtOrigin";
    case Fault::PoleAtOrigin: return "PoleAtOrigin";
    case Fault::DomainViolation: return "DomainViolation";
    case Fault::NoBoundState: return "NoBoundState";
    case Fault::PoleHit: return "PoleHit";
    case Fault::DeterminantZero: return "DeterminantZero";
    case Fault::ZeroKappa: return "ZeroKappa";
    case Fault::InvalidIndices: return "InvalidIndices";
    case Fault::OriginEvaluation: return "OriginEvaluation";
    case Fault::NotSmoothEnough: return "NotSmoothEnough";
    case Fault::OutOfSector: return "OutOfSector";
    case Fault::BadConfig: return "BadConfig";
    case Fault::Internal: return "Internal";
  }
  return "Unknown";
}

}  // namespace radialext
