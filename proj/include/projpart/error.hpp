#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace projpart {

enum class ErrorCode {
    NotPrimePower,
    Unsupported,
    DivisionByZero,
    SpecMismatch,
    AmbientMismatch,
    DimOutOfRange,
    PointInFlat,
    TooLarge,
    WrongArity,
    NotAPartition,
    BadDims,
    AlreadyDominated,
    TooLargeForExact,
    NotGeneralPosition,
    QTooSmall,
    BadQueryDim,
    InconsistentTrace,
    InvalidArgument,
    Overflow,
    ParseError,
};

std::string_view error_code_name(ErrorCode code);

/// Every failure raised by the library carries one of the codes above so the
/// CLI can emit a machine-readable record.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
    throw Error(code, message);
}

}  // namespace projpart
