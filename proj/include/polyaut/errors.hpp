#ifndef POLYAUT_ERRORS_HPP
#define POLYAUT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace polyaut {

// Error codes surfaced through the CLI as structured JSON. InputError-class
// codes map to exit 2, budget/inconclusive to exit 3, internal to exit 4.
enum class Err {
    DivisionByZero,
    FieldMismatch,
    ZeroInput,
    RingMismatch,
    ArityMismatch,
    ParseError,
    InvalidInput,
    NoWordFactorization,
    NotLocallyNilpotent,
    NotUnipotentWithinBound,
    RootOfUnityScalar,
    RangeTooSmall,
    SingularSystem,
    NotSemisimple,
    PowerMismatch,
    NoRootInField,
    FinitePartNotOrderR,
    InvalidFormParameters,
    BudgetExceeded,
    InternalError,
};

const char* err_name(Err e);

class AlgebraError : public std::runtime_error {
public:
    AlgebraError(Err code, const std::string& msg)
        : std::runtime_error(std::string(err_name(code)) + ": " + msg), code_(code) {}
    Err code() const { return code_; }

private:
    Err code_;
};

[[noreturn]] inline void fail(Err code, const std::string& msg) {
    throw AlgebraError(code, msg);
}

} // namespace polyaut

#endif
