#pragma once

#include <stdexcept>
#include <string>

namespace ckgeom {

/// Domain-level failure conditions. Each maps 1:1 onto a stable name used in
/// diagnostics and CLI output.
enum class Errc {
  NonCollinear,
  DegenerateQuadruple,
  CoincidentPoints,
  CoincidentLines,
  DegenerateConic,
  LineOnConic,
  WrongConicClass,
  SingularMatrix,
  PointNotAdmissible,
  OnAbsolute,
  DegenerateDual,
  PointAtInfinity,
  InvalidLambda,
  WrongKind,
  PointOnLine,
  LineNotSecant,
  CollinearVertices,
  RadiusTooLarge,
  ProbeOutOfDomain,
  PointNotOnQuadric,
  PointNotOnLines,
  PointNotOnLine,
  WrongQuadricKind,
  ParabolicSection,
  GeneratorTangency,
  PointNotInterior,
  NotHyperbolic,
  BadSchlafli,
  UnknownSuite,
};

const char* errc_name(Errc e);

/// Thrown when an operation is called outside its geometric domain.
/// Distinct from std::invalid_argument, which signals broken type invariants.
class DomainError : public std::runtime_error {
 public:
  DomainError(Errc code, const std::string& detail);
  Errc code() const { return code_; }
  const char* name() const { return errc_name(code_); }

 private:
  Errc code_;
};

[[noreturn]] void raise(Errc code, const std::string& detail = {});

}  // namespace ckgeom
