#pragma once

#include <stdexcept>
#include <string>

namespace lqt {

// Base of every error raised by the library. Callers that only need to
// report failures can catch this; the derived types exist so that tests and
// the CLI can distinguish the documented failure modes.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define LQT_DECLARE_ERROR(Name)                                               \
    class Name : public Error {                                               \
    public:                                                                   \
        explicit Name(const std::string& what) : Error(#Name ": " + what) {}  \
    }

// exact values
LQT_DECLARE_ERROR(BasisMismatch);
LQT_DECLARE_ERROR(IndeterminateComparison);
LQT_DECLARE_ERROR(ParseError);

// monomials
LQT_DECLARE_ERROR(EmptyGeneratorSet);
LQT_DECLARE_ERROR(DimensionMismatch);
LQT_DECLARE_ERROR(ExponentOverflow);

// sequences
LQT_DECLARE_ERROR(NonPositiveValue);
LQT_DECLARE_ERROR(AmbiguousDirection);
LQT_DECLARE_ERROR(DirectionNotMinimal);
LQT_DECLARE_ERROR(IndexOutOfRange);
LQT_DECLARE_ERROR(KilledDirectionUsed);
LQT_DECLARE_ERROR(IncompleteCoverage);

// analysis
LQT_DECLARE_ERROR(RatioUndefined);
LQT_DECLARE_ERROR(NotTerminated);
LQT_DECLARE_ERROR(PreconditionViolation);

// cli
LQT_DECLARE_ERROR(ConfigError);
LQT_DECLARE_ERROR(UnknownCheck);

#undef LQT_DECLARE_ERROR

} // namespace lqt
