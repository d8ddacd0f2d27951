#include "cylab/error.hpp"

namespace cylab {

const char* error_kind_name(ErrorKind k) {
    switch (k) {
        case ErrorKind::DivisionByZero: return "DivisionByZero";
        case ErrorKind::FieldMismatch: return "FieldMismatch";
        case ErrorKind::AmbientMismatch: return "AmbientMismatch";
        case ErrorKind::MissingImage: return "MissingImage";
        case ErrorKind::UnknownVariable: return "UnknownVariable";
        case ErrorKind::ParseError: return "ParseError";
        case ErrorKind::ResourceBudgetExceeded: return "ResourceBudgetExceeded";
        case ErrorKind::NotMember: return "NotMember";
        case ErrorKind::NoPreimage: return "NoPreimage";
        case ErrorKind::InconsistentPresentation: return "InconsistentPresentation";
        case ErrorKind::RelationNotPreserved: return "RelationNotPreserved";
        case ErrorKind::NotInverse: return "NotInverse";
        case ErrorKind::VariableClash: return "VariableClash";
        case ErrorKind::BoundTooSmall: return "BoundTooSmall";
        case ErrorKind::NotEquivariant: return "NotEquivariant";
        case ErrorKind::NotWellDefined: return "NotWellDefined";
        case ErrorKind::BoundExceeded: return "BoundExceeded";
        case ErrorKind::NoSliceWithinBound: return "NoSliceWithinBound";
        case ErrorKind::PresentationBudgetExceeded: return "PresentationBudgetExceeded";
        case ErrorKind::NotFixedPointFree: return "NotFixedPointFree";
        case ErrorKind::MatchingSearchExhausted: return "MatchingSearchExhausted";
        case ErrorKind::NotClearable: return "NotClearable";
        case ErrorKind::PreimageFailure: return "PreimageFailure";
        case ErrorKind::InvalidParameter: return "InvalidParameter";
        case ErrorKind::IoError: return "IoError";
    }
    return "Error";
}

}  // namespace cylab
