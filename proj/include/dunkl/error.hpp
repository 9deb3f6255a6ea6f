#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace dunkl {

enum class ErrorCode {
    InvalidArgument,
    NotARootSystem,
    NonInvariantMultiplicity,
    MTooSmall,
    UnnormalizedRoot,
    GroupTooLarge,
    NearHyperplane,
    ZeroRadius,
    DimensionTooLarge,
    BadRadii,
    OriginSingularity,
    OutsideBall,
    NonPhysicalSeed,
    HorizonTooSmall,
    UnclassifiableTail,
    KOHoldsNoBlowup,
    NoConvergence,
    ConfigError,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above so
/// callers (and the CLI exit-code mapping) can dispatch without parsing text.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

    [[nodiscard]] ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
    throw Error(code, message);
}

}  // namespace dunkl
