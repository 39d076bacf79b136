#include "projpart/error.hpp"

namespace projpart {

std::string_view error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::NotPrimePower: return "NotPrimePower";
        case ErrorCode::Unsupported: return "Unsupported";
        case ErrorCode::DivisionByZero: return "DivisionByZero";
        case ErrorCode::SpecMismatch: return "SpecMismatch";
        case ErrorCode::AmbientMismatch: return "AmbientMismatch";
        case ErrorCode::DimOutOfRange: return "DimOutOfRange";
        case ErrorCode::PointInFlat: return "PointInFlat";
        case ErrorCode::TooLarge: return "TooLarge";
        case ErrorCode::WrongArity: return "WrongArity";
        case ErrorCode::NotAPartition: return "NotAPartition";
        case ErrorCode::BadDims: return "BadDims";
        case ErrorCode::AlreadyDominated: return "AlreadyDominated";
        case ErrorCode::TooLargeForExact: return "TooLargeForExact";
        case ErrorCode::NotGeneralPosition: return "NotGeneralPosition";
        case ErrorCode::QTooSmall: return "QTooSmall";
        case ErrorCode::BadQueryDim: return "BadQueryDim";
        case ErrorCode::InconsistentTrace: return "InconsistentTrace";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::Overflow: return "Overflow";
        case ErrorCode::ParseError: return "ParseError";
    }
    return "Unknown";
}

}  // namespace projpart
