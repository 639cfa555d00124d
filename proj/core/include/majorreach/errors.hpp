// errors.hpp — named domain errors shared across the library
#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace majorreach {

// Base of all named rejections. `code()` is the stable machine-readable name
// that the CLI prints and maps to exit code 1.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& what)
        : std::runtime_error(code + ": " + what), code_(std::move(code)) {}
    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

#define MAJORREACH_DEFINE_ERROR(Name)                                   \
    class Name : public Error {                                        \
    public:                                                             \
        explicit Name(const std::string& what) : Error(#Name, what) {}  \
    };

MAJORREACH_DEFINE_ERROR(NotHermitian)
MAJORREACH_DEFINE_ERROR(NotAntiHermitian)
MAJORREACH_DEFINE_ERROR(NotUnitary)
MAJORREACH_DEFINE_ERROR(NotNormal)
MAJORREACH_DEFINE_ERROR(NotCollinear)
MAJORREACH_DEFINE_ERROR(NotMajorized)
MAJORREACH_DEFINE_ERROR(NotControllable)
MAJORREACH_DEFINE_ERROR(NoiseNotUnital)
MAJORREACH_DEFINE_ERROR(NoDistinctPair)
MAJORREACH_DEFINE_ERROR(DegeneratePair)
MAJORREACH_DEFINE_ERROR(DegenerateBlock)
MAJORREACH_DEFINE_ERROR(BadRank)
MAJORREACH_DEFINE_ERROR(EmptySet)
MAJORREACH_DEFINE_ERROR(LengthMismatch)
MAJORREACH_DEFINE_ERROR(DimensionMismatch)
MAJORREACH_DEFINE_ERROR(ZeroNoise)
MAJORREACH_DEFINE_ERROR(TooLarge)
MAJORREACH_DEFINE_ERROR(BudgetExceeded)
MAJORREACH_DEFINE_ERROR(InvalidState)

#undef MAJORREACH_DEFINE_ERROR

}  // namespace majorreach
