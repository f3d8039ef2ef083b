// dark_state.hpp - Lambda-type 3-level atom driven by one classical field.
//
// Rotating-frame Hamiltonian in the basis (|e>, |1>, |2>):
//
//       | delta  omega  omega |
//   H = | omega    0      0   |
//       | omega    0      0   |
//
// The Rabi frequency enters only through |omega|, so it is stored real and
// nonnegative. The state (|1> - |2>)/sqrt(2) is an exact zero-energy
// eigenstate for every (delta, omega).

#pragma once

#include <Eigen/Dense>

#include "qhe/thermo.hpp"
#include "qhe/three_level.hpp"

namespace qhe {

struct DarkStateParams {
    double delta{};  // common detuning
    double omega{};  // |Rabi frequency|, >= 0

    DarkStateParams() = default;
    // Throws Error{InvalidParameter} for negative or non-finite omega.
    DarkStateParams(double delta, double omega);
};

struct DarkStateSpectrum {
    double e_minus{};
    double e_zero{};
    double e_plus{};
    double k{};  // sqrt(delta^2 + 8 omega^2)

    double lower_gap() const noexcept { return e_zero - e_minus; }  // (k - delta) / 2
    double upper_gap() const noexcept { return e_plus - e_zero; }   // (k + delta) / 2
};

HermitianOperator hamiltonian(const DarkStateParams& p);

// R = (delta, omega). omega is used as given, so R may cross omega < 0.
HamiltonianFamily dark_state_family();

DarkStateSpectrum spectrum_closed_form(const DarkStateParams& p);

// (0, 1, -1) / sqrt(2)
Eigen::Vector3cd dark_vector();

// Throws Error{DegenerateSpacing} when either omega is zero.
SpacingEndpoints to_endpoints(const DarkStateParams& hot, const DarkStateParams& cold);

// Both spacings shrink from hot to cold, written with K and delta.
bool case1_constraints(const DarkStateParams& hot, const DarkStateParams& cold);

// delta_h > delta_l > 0 and |omega_l / delta_l| < |omega_h / delta_h|.
bool solution1_region(const DarkStateParams& hot, const DarkStateParams& cold);

// delta_h < delta_l < 0 and |omega_l / delta_l| < |omega_h / delta_h|.
bool solution2_region(const DarkStateParams& hot, const DarkStateParams& cold);

}  // namespace qhe
