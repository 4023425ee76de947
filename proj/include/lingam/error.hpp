#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace lingam {

enum class ErrorCode {
    DimensionError,
    DimensionMismatch,
    ZeroVarianceRow,
    ZeroVariance,
    SingularDesign,
    TooFewObservations,
    InvalidPermutation,
    InvalidArgument,
    NotInActiveSet,
    RankDeficient,
    NoFeasibleAssignment,
    ZeroDiagonal,
    TooManySingularResamples,
    ParseError,
    RaggedRows,
    NonNumericCell,
    SchemaVersion,
    IoError,
};

// Stable identifier used in CLI diagnostics, e.g. "ZeroVarianceRow".
std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace lingam
