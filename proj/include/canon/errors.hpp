#pragma once

#include <stdexcept>
#include <string>

namespace canon {

/// Broad failure classes; the CLI maps them onto exit codes.
enum class ErrorClass {
    Config,        // bad user input or configuration
    Verification,  // a mathematical check failed
    Degeneracy,    // an unlucky random choice; the caller may resample
};

class Error : public std::runtime_error {
public:
    Error(std::string name, ErrorClass cls, const std::string& what)
        : std::runtime_error(name + ": " + what), name_(std::move(name)), cls_(cls) {}
    const std::string& name() const { return name_; }
    ErrorClass error_class() const { return cls_; }

private:
    std::string name_;
    ErrorClass cls_;
};

#define CANON_DEFINE_ERROR(Name, Class)                                                    \
    class Name : public Error {                                                            \
    public:                                                                                \
        explicit Name(const std::string& what = "") : Error(#Name, ErrorClass::Class, what) {} \
    }

// algebra
CANON_DEFINE_ERROR(InconsistentSystem, Degeneracy);
// curve
CANON_DEFINE_ERROR(UnsupportedGenus, Config);
CANON_DEFINE_ERROR(GenerationFailed, Degeneracy);
CANON_DEFINE_ERROR(InsufficientPoints, Degeneracy);
CANON_DEFINE_ERROR(SingularPoint, Degeneracy);
CANON_DEFINE_ERROR(NotOnCurve, Config);
// canring
CANON_DEFINE_ERROR(RankDeficiency, Degeneracy);
// pencil
CANON_DEFINE_ERROR(InadmissiblePencil, Degeneracy);
// net
CANON_DEFINE_ERROR(RankDeficientW, Config);
CANON_DEFINE_ERROR(AmbiguousFit, Degeneracy);
// cone
CANON_DEFINE_ERROR(CorankJump, Degeneracy);
CANON_DEFINE_ERROR(UnderdeterminedReconstruction, Degeneracy);
CANON_DEFINE_ERROR(InconsistentReconstruction, Verification);
CANON_DEFINE_ERROR(VerificationFailed, Verification);
CANON_DEFINE_ERROR(NonGenericD, Degeneracy);
CANON_DEFINE_ERROR(SigmaPoint, Degeneracy);
// bundle
CANON_DEFINE_ERROR(SplittingViolation, Verification);
CANON_DEFINE_ERROR(NodeFiber, Degeneracy);
CANON_DEFINE_ERROR(NonGenericCoordinates, Degeneracy);
// cli
CANON_DEFINE_ERROR(ConfigError, Config);

#undef CANON_DEFINE_ERROR

/// Oracle precondition failures carry the specific reason.
class DegenerateInput : public Error {
public:
    enum class Reason { InVertex, OnGammaFiber, InadmissiblePencil, CorankJump, NotVertexVector };
    DegenerateInput(Reason r, const std::string& what)
        : Error("DegenerateInput", ErrorClass::Degeneracy, std::string(reason_name(r)) + ": " + what), reason_(r) {}
    Reason reason() const { return reason_; }

    static const char* reason_name(Reason r) {
        switch (r) {
            case Reason::InVertex: return "InVertex";
            case Reason::OnGammaFiber: return "OnGammaFiber";
            case Reason::InadmissiblePencil: return "InadmissiblePencil";
            case Reason::CorankJump: return "CorankJump";
            case Reason::NotVertexVector: return "NotVertexVector";
        }
        return "?";
    }

private:
    Reason reason_;
};

}  // namespace canon
