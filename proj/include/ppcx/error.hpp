#pragma once

#include <stdexcept>
#include <string>

namespace ppcx {

/// Error categories raised by the library. The CLI maps these to exit codes.
enum class ErrorKind {
    CapExceeded,
    FieldMismatch,
    GroupMismatch,
    InvalidRepresentation,
    InvalidCharacter,
    NotPGroup,
    NotSubgroup,
    NotIndecomposable,
    NotOneDimensional,
    NotAbsolutelyPDivisible,
    NotPPermutation,
    NotChainMap,
    NoTrivialSummand,
    VertexNotSylow,
    UnknownExample,
    Indeterminate,
    InvalidInput,
    Internal,
};

const char* error_kind_name(ErrorKind k);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(error_kind_name(kind)) + ": " + what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void raise(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

inline void require(bool cond, ErrorKind kind, const std::string& what) {
    if (!cond) raise(kind, what);
}

}  // namespace ppcx
