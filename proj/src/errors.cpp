#include "ckgeom/errors.hpp"

namespace ckgeom {

const char* errc_name(Errc e) {
  switch (e) {
    case Errc::NonCollinear: return "NonCollinear";
    case Errc::DegenerateQuadruple: return "DegenerateQuadruple";
    case Errc::CoincidentPoints: return "CoincidentPoints";
    case Errc::CoincidentLines: return "CoincidentLines";
    case Errc::DegenerateConic: return "DegenerateConic";
    case Errc::LineOnConic: return "LineOnConic";
    case Errc::WrongConicClass: return "WrongConicClass";
    case Errc::SingularMatrix: return "SingularMatrix";
    case Errc::PointNotAdmissible: return "PointNotAdmissible";
    case Errc::OnAbsolute: return "OnAbsolute";
    case Errc::DegenerateDual: return "DegenerateDual";
    case Errc::PointAtInfinity: return "PointAtInfinity";
    case Errc::InvalidLambda: return "InvalidLambda";
    case Errc::WrongKind: return "WrongKind";
    case Errc::PointOnLine: return "PointOnLine";
    case Errc::LineNotSecant: return "LineNotSecant";
    case Errc::CollinearVertices: return "CollinearVertices";
    case Errc::RadiusTooLarge: return "RadiusTooLarge";
    case Errc::ProbeOutOfDomain: return "ProbeOutOfDomain";
    case Errc::PointNotOnQuadric: return "PointNotOnQuadric";
    case Errc::PointNotOnLines: return "PointNotOnLines";
    case Errc::PointNotOnLine: return "PointNotOnLine";
    case Errc::WrongQuadricKind: return "WrongQuadricKind";
    case Errc::ParabolicSection: return "ParabolicSection";
    case Errc::GeneratorTangency: return "GeneratorTangency";
    case Errc::PointNotInterior: return "PointNotInterior";
    case Errc::NotHyperbolic: return "NotHyperbolic";
    case Errc::BadSchlafli: return "BadSchlafli";
    case Errc::UnknownSuite: return "UnknownSuite";
  }
  return "UnknownError";
}

DomainError::DomainError(Errc code, const std::string& detail)
    : std::runtime_error(detail.empty() ? std::string(errc_name(code))
                                        : std::string(errc_name(code)) + ": " + detail),
      code_(code) {}

void raise(Errc code, const std::string& detail) { throw DomainError(code, detail); }

}  // namespace ckgeom
