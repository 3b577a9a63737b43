#pragma once

#include <stdexcept>
#include <string>

namespace nst {

enum class Errc {
    // triangulation
    SlotAlreadyGlued,
    MalformedPermutation,
    SelfFaceGluing,
    InvalidEdgePresent,
    Disconnected,
    // normal coordinates
    DimensionMismatch,
    NotAdmissible,
    UnsupportedVector,
    // cone
    NotInCone,
    // abstract optimisation
    RoleViolation,
    TooFewClauses,
    IncompatibleM,
    TooManyVariables,
    AssignmentDoesNotSatisfy,
    PreconditionViolated,
    BadCoordinate,
    // detection
    BudgetExceeded,
    // gadgets / reductions
    NotAGluing,
    NotCubic,
    NotHamiltonian,
    CertificateInvalid,
    LocalMoebiusFound,
    TooLarge,
    // I/O
    ParseError,
    IoError,
};

const char* errc_name(Errc code);

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

    Errc code() const { return code_; }

private:
    Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) {
    throw Error(code, what);
}

} // namespace nst
