#pragma once

#include <stdexcept>
#include <string>

namespace hexcurv {

enum class Err {
    PreconditionViolated,
    DegenerateSpan,
    CoincidentPlanes,
    DegenerateHexagon,
    NoSolution,
    GramSignature,
    InconsistentRatio,
    NoRealCenter,
    IncompatibleSplits,
    UnclassifiableSigns,
    DualCenterOutside,
    SingularHeight,
    NotAdmissible,
    DomainViolation,
    UnsupportedWeightRange,
    SyntaxError,
    DanglingReference,
    FamilyConstraint,
    OutOfRange,
    NotConverged,
    InfeasibleTarget,
    PathLeavesDomain,
    NoFeasibleStart,
};

const char* err_name(Err e);

class Error : public std::runtime_error {
public:
    Error(Err code, const std::string& what);
    Err code() const { return code_; }
    const std::string& detail() const { return detail_; }

private:
    Err code_;
    std::string detail_;
};

[[noreturn]] void fail(Err code, const std::string& what);

}  // namespace hexcurv
