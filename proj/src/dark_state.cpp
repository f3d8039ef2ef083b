#include "qhe/dark_state.hpp"

#include <cmath>

#include "qhe/errors.hpp"

namespace qhe {

DarkStateParams::DarkStateParams(double delta_, double omega_) : delta(delta_), omega(omega_) {
    if (!std::isfinite(delta) || !std::isfinite(omega) || omega < 0.0) {
        throw Error(Errc::InvalidParameter, "DarkStateParams: omega must be finite and nonnegative");
    }
}

namespace {

Eigen::MatrixXcd matrix_for(double delta, double omega) {
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(3, 3);
    h(0, 0) = delta;
    h(0, 1) = h(1, 0) = omega;
    h(0, 2) = h(2, 0) = omega;
    return h;
}

void require_coupled(const DarkStateParams& p, const char* which) {
    if (!(p.omega > 0.0)) {
        throw Error(Errc::DegenerateSpacing,
                    std::string(which) + " point has omega = 0: lower spacing vanishes");
    }
}

}  // namespace

HermitianOperator hamiltonian(const DarkStateParams& p) { return HermitianOperator(matrix_for(p.delta, p.omega)); }

HamiltonianFamily dark_state_family() {
    return HamiltonianFamily{3, 2, [](std::span<const double> r) {
                                 return HermitianOperator(matrix_for(r[0], r[1]));
                             }};
}

DarkStateSpectrum spectrum_closed_form(const DarkStateParams& p) {
    const double k = std::hypot(p.delta, std::sqrt(8.0) * p.omega);
    if (k == 0.0) return {0.0, 0.0, 0.0, 0.0};
    // (k - |delta|) / 2 == 4 omega^2 / (k + |delta|), without the cancellation.
    const double small = 4.0 * p.omega * p.omega / (k + std::abs(p.delta));
    const double large = 0.5 * (k + std::abs(p.delta));
    if (p.delta >= 0.0) return {-small, 0.0, large, k};
    return {-large, 0.0, small, k};
}

Eigen::Vector3cd dark_vector() {
    const double s = 1.0 / std::sqrt(2.0);
    return Eigen::Vector3cd(0.0, s, -s);
}

SpacingEndpoints to_endpoints(const DarkStateParams& hot, const DarkStateParams& cold) {
    require_coupled(hot, "hot");
    require_coupled(cold, "cold");
    const DarkStateSpectrum h = spectrum_closed_form(hot);
    const DarkStateSpectrum l = spectrum_closed_form(cold);
    return SpacingEndpoints(h.lower_gap(), h.upper_gap(), l.lower_gap(), l.upper_gap());
}

bool case1_constraints(const DarkStateParams& hot, const DarkStateParams& cold) {
    require_coupled(hot, "hot");
    require_coupled(cold, "cold");
    // K - delta and K + delta are twice the lower and upper gaps.
    const DarkStateSpectrum h = spectrum_closed_form(hot);
    const DarkStateSpectrum l = spectrum_closed_form(cold);
    const double k_minus_h = 2.0 * h.lower_gap(), k_plus_h = 2.0 * h.upper_gap();
    const double k_minus_l = 2.0 * l.lower_gap(), k_plus_l = 2.0 * l.upper_gap();
    return k_minus_l / k_minus_h < 1.0 && k_plus_l / k_plus_h < 1.0;
}

bool solution1_region(const DarkStateParams& hot, const DarkStateParams& cold) {
    require_coupled(hot, "hot");
    require_coupled(cold, "cold");
    if (!(hot.delta > cold.delta && cold.delta > 0.0)) return false;
    return std::abs(cold.omega / cold.delta) < std::abs(hot.omega / hot.delta);
}

bool solution2_region(const DarkStateParams& hot, const DarkStateParams& cold) {
    require_coupled(hot, "hot");
    require_coupled(cold, "cold");
    if (!(hot.delta < cold.delta && cold.delta < 0.0)) return false;
    return std::abs(cold.omega / cold.delta) < std::abs(hot.omega / hot.delta);
}

}  // namespace qhe
