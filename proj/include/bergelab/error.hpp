#pragma once

#include <stdexcept>
#include <string>

namespace bergelab {

enum class ErrorCode {
    EdgeWrongSize,
    VertexOutOfRange,
    DuplicateEdge,
    ParameterOutOfRange,
    Unreachable,
    WrongK,
    WrongR,
    InvalidPath,
    BudgetExceeded,
    Infeasible,
    MissingGamma0,
    ConfigInvalid,
    IoError,
    ParseError,
};

const char* to_string(ErrorCode code) noexcept;

// All library failures surface as this exception; the code is the contract,
// the message is for humans.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

} // namespace bergelab
