#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qhe {

enum class Errc {
    InvalidSpacing,
    InvalidScale,
    InvalidParameter,
    InvalidTemperature,
    DimensionMismatch,
    DegenerateEigenbasis,
    DegenerateSpacing,
    XiUndefined,
    ThetaUndefined,
    NotApplicable,
    BoundarySubcase,
    ConfigError,
    NumericFailure,
};

std::string_view to_string(Errc code) noexcept;

// Single exception type for the library; callers branch on code().
class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

}  // namespace qhe
