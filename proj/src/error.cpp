#include "bergelab/error.hpp"

namespace bergelab {

const char* to_string(ErrorCode code) noexcept {
    switch (code) {
    case ErrorCode::EdgeWrongSize: return "EdgeWrongSize";
    case ErrorCode::VertexOutOfRange: return "VertexOutOfRange";
    case ErrorCode::DuplicateEdge: return "DuplicateEdge";
    case ErrorCode::ParameterOutOfRange: return "ParameterOutOfRange";
    case ErrorCode::Unreachable: return "Unreachable";
    case ErrorCode::WrongK: return "WrongK";
    case ErrorCode::WrongR: return "WrongR";
    case ErrorCode::InvalidPath: return "InvalidPath";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::Infeasible: return "Infeasible";
    case ErrorCode::MissingGamma0: return "MissingGamma0";
    case ErrorCode::ConfigInvalid: return "ConfigInvalid";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::ParseError: return "ParseError";
    }
    return "Unknown";
}

} // namespace bergelab
