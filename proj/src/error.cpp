#include "dunkl/error.hpp"

namespace dunkl {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::NotARootSystem: return "NotARootSystem";
        case ErrorCode::NonInvariantMultiplicity: return "NonInvariantMultiplicity";
        case ErrorCode::MTooSmall: return "MTooSmall";
        case ErrorCode::UnnormalizedRoot: return "UnnormalizedRoot";
        case ErrorCode::GroupTooLarge: return "GroupTooLarge";
        case ErrorCode::NearHyperplane: return "NearHyperplane";
        case ErrorCode::ZeroRadius: return "ZeroRadius";
        case ErrorCode::DimensionTooLarge: return "DimensionTooLarge";
        case ErrorCode::BadRadii: return "BadRadii";
        case ErrorCode::OriginSingularity: return "OriginSingularity";
        case ErrorCode::OutsideBall: return "OutsideBall";
        case ErrorCode::NonPhysicalSeed: return "NonPhysicalSeed";
        case ErrorCode::HorizonTooSmall: return "HorizonTooSmall";
        case ErrorCode::UnclassifiableTail: return "UnclassifiableTail";
        case ErrorCode::KOHoldsNoBlowup: return "KOHoldsNoBlowup";
        case ErrorCode::NoConvergence: return "NoConvergence";
        case ErrorCode::ConfigError: return "ConfigError";
    }
    return "Unknown";
}

}  // namespace dunkl
