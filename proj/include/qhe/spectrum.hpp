// spectrum.hpp - discrete energy spectra of the working substance.
//
// Natural units throughout (k_B = hbar = 1). Energies are stored in strictly
// increasing order; the ground energy is arbitrary.

#pragma once

#include <cstddef>
#include <span>
#include <variant>
#include <vector>

namespace qhe {

class LevelSpectrum {
public:
    // Throws Error{InvalidSpacing} unless N >= 2 and energies strictly increase.
    explicit LevelSpectrum(std::vector<double> energies);

    std::span<const double> energies() const noexcept { return energies_; }
    std::size_t size() const noexcept { return energies_.size(); }
    double ground() const noexcept { return energies_.front(); }
    double operator[](std::size_t i) const noexcept { return energies_[i]; }

    friend bool operator==(const LevelSpectrum&, const LevelSpectrum&) = default;

private:
    std::vector<double> energies_;
};

struct ExplicitLevels {
    std::vector<double> energies;
};

// E_n = (n + 1/2) * frequency, n = 0..levels-1
struct HarmonicLevels {
    double frequency{1.0};
    std::size_t levels{2};
};

// Unit-mass particle in an infinite well: E_n = (n+1)^2 pi^2 / (2 width^2)
struct BoxLevels {
    double width{1.0};
    std::size_t levels{2};
};

using SpectrumFamily = std::variant<ExplicitLevels, HarmonicLevels, BoxLevels>;

std::vector<double> spacings(const LevelSpectrum& s);

LevelSpectrum from_spacings(std::span<const double> deltas, double ground = 0.0);

// Multiplies every energy (ground included) by factor > 0.
LevelSpectrum uniform_scale(const LevelSpectrum& s, double factor);

// Adds a constant to every energy.
LevelSpectrum shifted(const LevelSpectrum& s, double offset);

LevelSpectrum family_spectrum(const SpectrumFamily& family);

}  // namespace qhe
