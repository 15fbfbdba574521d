#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace angle_forge {

enum class Errc {
  DegenerateAngle,
  CoincidentPoint,
  TiedDirection,
  PoleEncountered,
  TooFewPoints,
  OracleMismatch,
  NotConvexPosition,
  DegenerateSplit,
  LemmaViolation,
  ScaleExceeded,
  HypothesisUnmet,
  DegeneratePair,
  IdenticalPairs,
  ZeroPolynomial,
  CoincidentParameter,
  SingularDenominator,
  UnstableClustering,
  PoleInAP,
  InvalidArgument,
  ParseError,
};

constexpr std::string_view errc_name(Errc e) {
  switch (e) {
    case Errc::DegenerateAngle: return "DegenerateAngle";
    case Errc::CoincidentPoint: return "CoincidentPoint";
    case Errc::TiedDirection: return "TiedDirection";
    case Errc::PoleEncountered: return "PoleEncountered";
    case Errc::TooFewPoints: return "TooFewPoints";
    case Errc::OracleMismatch: return "OracleMismatch";
    case Errc::NotConvexPosition: return "NotConvexPosition";
    case Errc::DegenerateSplit: return "DegenerateSplit";
    case Errc::LemmaViolation: return "LemmaViolation";
    case Errc::ScaleExceeded: return "ScaleExceeded";
    case Errc::HypothesisUnmet: return "HypothesisUnmet";
    case Errc::DegeneratePair: return "DegeneratePair";
    case Errc::IdenticalPairs: return "IdenticalPairs";
    case Errc::ZeroPolynomial: return "ZeroPolynomial";
    case Errc::CoincidentParameter: return "CoincidentParameter";
    case Errc::SingularDenominator: return "SingularDenominator";
    case Errc::UnstableClustering: return "UnstableClustering";
    case Errc::PoleInAP: return "PoleInAP";
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::ParseError: return "ParseError";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace angle_forge
