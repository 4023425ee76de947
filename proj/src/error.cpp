#include "lingam/error.hpp"

namespace lingam {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::DimensionError: return "DimensionError";
        case ErrorCode::DimensionMismatch: return "DimensionMismatch";
        case ErrorCode::ZeroVarianceRow: return "ZeroVarianceRow";
        case ErrorCode::ZeroVariance: return "ZeroVariance";
        case ErrorCode::SingularDesign: return "SingularDesign";
        case ErrorCode::TooFewObservations: return "TooFewObservations";
        case ErrorCode::InvalidPermutation: return "InvalidPermutation";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::NotInActiveSet: return "NotInActiveSet";
        case ErrorCode::RankDeficient: return "RankDeficient";
        case ErrorCode::NoFeasibleAssignment: return "NoFeasibleAssignment";
        case ErrorCode::ZeroDiagonal: return "ZeroDiagonal";
        case ErrorCode::TooManySingularResamples: return "TooManySingularResamples";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::RaggedRows: return "RaggedRows";
        case ErrorCode::NonNumericCell: return "NonNumericCell";
        case ErrorCode::SchemaVersion: return "SchemaVersion";
        case ErrorCode::IoError: return "IoError";
    }
    return "Unknown";
}

}  // namespace lingam
