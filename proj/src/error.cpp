#include "ppcx/error.hpp"

namespace ppcx {

const char* error_kind_name(ErrorKind k) {
    switch (k) {
        case ErrorKind::CapExceeded: return "CapExceeded";
        case ErrorKind::FieldMismatch: return "FieldMismatch";
        case ErrorKind::GroupMismatch: return "GroupMismatch";
        case ErrorKind::InvalidRepresentation: return "InvalidRepresentation";
        case ErrorKind::InvalidCharacter: return "InvalidCharacter";
        case ErrorKind::NotPGroup: return "NotPGroup";
        case ErrorKind::NotSubgroup: return "NotSubgroup";
        case ErrorKind::NotIndecomposable: return "NotIndecomposable";
        case ErrorKind::NotOneDimensional: return "NotOneDimensional";
        case ErrorKind::NotAbsolutelyPDivisible: return "NotAbsolutelyPDivisible";
        case ErrorKind::NotPPermutation: return "NotPPermutation";
        case ErrorKind::NotChainMap: return "NotChainMap";
        case ErrorKind::NoTrivialSummand: return "NoTrivialSummand";
        case ErrorKind::VertexNotSylow: return "VertexNotSylow";
        case ErrorKind::UnknownExample: return "UnknownExample";
        case ErrorKind::Indeterminate: return "Indeterminate";
        case ErrorKind::InvalidInput: return "InvalidInput";
        case ErrorKind::Internal: return "Internal";
    }
    return "Unknown";
}

}  // namespace ppcx
