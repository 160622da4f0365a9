#include "polyaut/errors.hpp"

namespace polyaut {

const char* err_name(Err e) {
    switch (e) {
        case Err::DivisionByZero: return "DivisionByZero";
        case Err::FieldMismatch: return "FieldMismatch";
        case Err::ZeroInput: return "ZeroInput";
        case Err::RingMismatch: return "RingMismatch";
        case Err::ArityMismatch: return "ArityMismatch";
        case Err::ParseError: return "ParseError";
        case Err::InvalidInput: return "InvalidInput";
        case Err::NoWordFactorization: return "NoWordFactorization";
        case Err::NotLocallyNilpotent: return "NotLocallyNilpotent";
        case Err::NotUnipotentWithinBound: return "NotUnipotentWithinBound";
        case Err::RootOfUnityScalar: return "RootOfUnityScalar";
        case Err::RangeTooSmall: return "RangeTooSmall";
        case Err::SingularSystem: return "SingularSystem";
        case Err::NotSemisimple: return "NotSemisimple";
        case Err::PowerMismatch: return "PowerMismatch";
        case Err::NoRootInField: return "NoRootInField";
        case Err::FinitePartNotOrderR: return "FinitePartNotOrder_r";
        case Err::InvalidFormParameters: return "InvalidFormParameters";
        case Err::BudgetExceeded: return "BudgetExceeded";
        case Err::InternalError: return "InternalError";
    }
    return "UnknownError";
}

} // namespace polyaut
