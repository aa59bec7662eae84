#include "hexcurv/error.hpp"

namespace hexcurv {

const char* err_name(Err e)
{
    switch (e) {
    case Err::PreconditionViolated: return "PreconditionViolated";
    case Err::DegenerateSpan: return "DegenerateSpan";
    case Err::CoincidentPlanes: return "CoincidentPlanes";
    case Err::DegenerateHexagon: return "DegenerateHexagon";
    case Err::NoSolution: return "NoSolution";
    case Err::GramSignature: return "GramSignature";
    case Err::InconsistentRatio: return "InconsistentRatio";
    case Err::NoRealCenter: return "NoRealCenter";
    case Err::IncompatibleSplits: return "IncompatibleSplits";
    case Err::UnclassifiableSigns: return "UnclassifiableSigns";
    case Err::DualCenterOutside: return "DualCenterOutside";
    case Err::SingularHeight: return "SingularHeight";
    case Err::NotAdmissible: return "NotAdmissible";
    case Err::DomainViolation: return "DomainViolation";
    case Err::UnsupportedWeightRange: return "UnsupportedWeightRange";
    case Err::SyntaxError: return "SyntaxError";
    case Err::DanglingReference: return "DanglingReference";
    case Err::FamilyConstraint: return "FamilyConstraint";
    case Err::OutOfRange: return "OutOfRange";
    case Err::NotConverged: return "NotConverged";
    case Err::InfeasibleTarget: return "InfeasibleTarget";
    case Err::PathLeavesDomain: return "PathLeavesDomain";
    case Err::NoFeasibleStart: return "NoFeasibleStart";
    }
    return "Unknown";
}

Error::Error(Err code, const std::string& what)
    : std::runtime_error(std::string(err_name(code)) + ": " + what), code_(code), detail_(what)
{
}

void fail(Err code, const std::string& what)
{
    throw Error(code, what);
}

}  // namespace hexcurv
