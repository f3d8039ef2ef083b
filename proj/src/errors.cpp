#include "qhe/errors.hpp"

namespace qhe {

std::string_view to_string(Errc code) noexcept {
    switch (code) {
        case Errc::InvalidSpacing: return "invalid_spacing";
        case Errc::InvalidScale: return "invalid_scale";
        case Errc::InvalidParameter: return "invalid_parameter";
        case Errc::InvalidTemperature: return "invalid_temperature";
        case Errc::DimensionMismatch: return "dimension_mismatch";
        case Errc::DegenerateEigenbasis: return "degenerate_eigenbasis";
        case Errc::DegenerateSpacing: return "degenerate_spacing";
        case Errc::XiUndefined: return "xi_undefined";
        case Errc::ThetaUndefined: return "theta_undefined";
        case Errc::NotApplicable: return "not_applicable";
        case Errc::BoundarySubcase: return "boundary_subcase";
        case Errc::ConfigError: return "config_error";
        case Errc::NumericFailure: return "numeric_failure";
    }
    return "unknown";
}

}  // namespace qhe
