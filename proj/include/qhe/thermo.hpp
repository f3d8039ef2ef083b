// thermo.hpp - Gibbs-state thermodynamics and the operator-level split of a
// Hamiltonian variation into work (diagonal) and heat (off-diagonal) parts.

#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "qhe/spectrum.hpp"

namespace qhe {

struct ThermalState {
    double temperature{};
    double beta{};
    std::vector<double> populations;
};

// Z = sum_m exp(-E_m / T). Overflows/underflows for |E_0|/T beyond ~700;
// use log_partition_function there.
double partition_function(const LevelSpectrum& s, double temperature);
double log_partition_function(const LevelSpectrum& s, double temperature);

ThermalState gibbs_populations(const LevelSpectrum& s, double temperature);

double internal_energy(const LevelSpectrum& s, const ThermalState& state);

// Von Neumann entropy of a diagonal ensemble, 0 ln 0 := 0.
double entropy(std::span<const double> populations);
inline double entropy(const ThermalState& state) { return entropy(state.populations); }

class HermitianOperator {
public:
    // Throws Error{InvalidParameter} if the matrix is not square or deviates
    // from its adjoint by more than 1e-12 (max-abs).
    explicit HermitianOperator(Eigen::MatrixXcd matrix);

    const Eigen::MatrixXcd& matrix() const noexcept { return m_; }
    std::size_t dimension() const noexcept { return static_cast<std::size_t>(m_.rows()); }

private:
    Eigen::MatrixXcd m_;
};

// R -> H(R) on a parameter manifold. evaluate must be re-entrant.
struct HamiltonianFamily {
    std::size_t dimension{};
    std::size_t parameter_count{};
    std::function<HermitianOperator(std::span<const double>)> evaluate;

    HermitianOperator operator()(std::span<const double> point) const;
};

// Instantaneous eigenbasis, ascending energies. Each eigenvector's
// largest-magnitude component is rotated to be real and positive.
struct Eigenbasis {
    Eigen::VectorXd energies;
    Eigen::MatrixXcd vectors;  // columns
};

Eigenbasis eigenbasis(const HermitianOperator& h);

struct DifferentialSplit {
    Eigen::MatrixXcd delta_h;    // H(R+dR) - H(R) in the eigenbasis of H(R)
    Eigen::MatrixXcd work_part;  // diagonal of delta_h
    Eigen::MatrixXcd heat_part;  // off-diagonal of delta_h
    Eigenbasis basis;            // eigenbasis of H(R)
};

// Relative level-gap threshold below which the eigenbasis is rejected.
inline constexpr double kDegeneracyThreshold = 1e-10;

DifferentialSplit decompose_differential(const HamiltonianFamily& family,
                                         std::span<const double> point,
                                         std::span<const double> displacement);

// |<m|dH/du|m> - dE_m/du| per level, both sides by central differences of
// step h along direction u.
std::vector<double> feynman_hellman_residual(const HamiltonianFamily& family,
                                             std::span<const double> point,
                                             std::span<const double> direction,
                                             double step);

// max_{m != n} |<m|dH|n> - (E_n - E_m) <m|n(R+dR)>| with phase-aligned
// eigenvectors; vanishes at second order in |dR|.
double off_diagonal_residual(const HamiltonianFamily& family,
                             std::span<const double> point,
                             std::span<const double> displacement);

}  // namespace qhe
