#include "qhe/spectrum.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "qhe/errors.hpp"

namespace qhe {

LevelSpectrum::LevelSpectrum(std::vector<double> energies) : energies_(std::move(energies)) {
    if (energies_.size() < 2) {
        throw Error(Errc::InvalidSpacing, "LevelSpectrum: need at least two levels");
    }
    for (std::size_t i = 0; i < energies_.size(); ++i) {
        if (!std::isfinite(energies_[i])) {
            throw Error(Errc::InvalidSpacing, "LevelSpectrum: non-finite energy");
        }
        if (i > 0 && !(energies_[i] > energies_[i - 1])) {
            throw Error(Errc::InvalidSpacing,
                        "LevelSpectrum: energies must be strictly increasing (level " +
                            std::to_string(i) + ")");
        }
    }
}

std::vector<double> spacings(const LevelSpectrum& s) {
    const auto e = s.energies();
    std::vector<double> out(e.size() - 1);
    for (std::size_t i = 1; i < e.size(); ++i) out[i - 1] = e[i] - e[i - 1];
    return out;
}

LevelSpectrum from_spacings(std::span<const double> deltas, double ground) {
    std::vector<double> energies;
    energies.reserve(deltas.size() + 1);
    energies.push_back(ground);
    for (double d : deltas) {
        if (!(d > 0.0) || !std::isfinite(d)) {
            throw Error(Errc::InvalidSpacing, "from_spacings: spacings must be positive");
        }
        energies.push_back(energies.back() + d);
    }
    return LevelSpectrum(std::move(energies));
}

LevelSpectrum uniform_scale(const LevelSpectrum& s, double factor) {
    if (!(factor > 0.0) || !std::isfinite(factor)) {
        throw Error(Errc::InvalidScale, "uniform_scale: factor must be positive");
    }
    std::vector<double> e(s.energies().begin(), s.energies().end());
    for (double& x : e) x *= factor;
    return LevelSpectrum(std::move(e));
}

LevelSpectrum shifted(const LevelSpectrum& s, double offset) {
    std::vector<double> e(s.energies().begin(), s.energies().end());
    for (double& x : e) x += offset;
    return LevelSpectrum(std::move(e));
}

namespace {

struct FamilyVisitor {
    LevelSpectrum operator()(const ExplicitLevels& f) const { return LevelSpectrum(f.energies); }

    LevelSpectrum operator()(const HarmonicLevels& f) const {
        if (!(f.frequency > 0.0) || !std::isfinite(f.frequency)) {
            throw Error(Errc::InvalidParameter, "harmonic: frequency must be positive");
        }
        std::vector<double> e(f.levels);
        for (std::size_t n = 0; n < f.levels; ++n) e[n] = (static_cast<double>(n) + 0.5) * f.frequency;
        return LevelSpectrum(std::move(e));
    }

    LevelSpectrum operator()(const BoxLevels& f) const {
        if (!(f.width > 0.0) || !std::isfinite(f.width)) {
            throw Error(Errc::InvalidParameter, "box: width must be positive");
        }
        constexpr double pi2 = std::numbers::pi * std::numbers::pi;
        std::vector<double> e(f.levels);
        for (std::size_t n = 0; n < f.levels; ++n) {
            const double k = static_cast<double>(n + 1);
            e[n] = k * k * pi2 / (2.0 * f.width * f.width);
        }
        return LevelSpectrum(std::move(e));
    }
};

}  // namespace

LevelSpectrum family_spectrum(const SpectrumFamily& family) {
    return std::visit(FamilyVisitor{}, family);
}

}  // namespace qhe
