// cycle.hpp - four-stroke quantum Otto cycle.
//
// Stroke 1: contact with the hot bath at fixed hot spectrum (Gibbs at T_h).
// Stroke 2: adiabatic deformation hot -> cold spectrum, populations frozen.
// Stroke 3: contact with the cold bath at fixed cold spectrum (Gibbs at T_l).
// Stroke 4: adiabatic deformation cold -> hot spectrum, populations frozen.
//
// All energy sums measure each spectrum from its own ground level.

#pragma once

#include <optional>
#include <vector>

#include "qhe/spectrum.hpp"
#include "qhe/thermo.hpp"

namespace qhe {

class OttoCycle {
public:
    // Throws DimensionMismatch for unequal sizes, InvalidTemperature for
    // non-positive temperatures. t_hot > t_cold is not required.
    OttoCycle(LevelSpectrum hot, LevelSpectrum cold, double t_hot, double t_cold);

    const LevelSpectrum& hot() const noexcept { return hot_; }
    const LevelSpectrum& cold() const noexcept { return cold_; }
    double t_hot() const noexcept { return t_hot_; }
    double t_cold() const noexcept { return t_cold_; }
    std::size_t levels() const noexcept { return hot_.size(); }

private:
    LevelSpectrum hot_;
    LevelSpectrum cold_;
    double t_hot_;
    double t_cold_;
};

// Populations at the end of each stroke. Adiabatic strokes copy populations
// verbatim, so end_stroke2 == end_stroke1 and end_stroke4 == end_stroke3.
struct StrokeStates {
    std::vector<double> end_stroke1;
    std::vector<double> end_stroke2;
    std::vector<double> end_stroke3;
    std::vector<double> end_stroke4;
};

StrokeStates run_strokes(const OttoCycle& c);

double net_work(const OttoCycle& c);
double heat_absorbed(const OttoCycle& c);
double heat_released(const OttoCycle& c);
std::optional<double> efficiency(const OttoCycle& c);
bool pwc_holds(const OttoCycle& c);

struct CycleReport {
    double net_work{};
    double heat_in{};
    double heat_out{};
    std::optional<double> efficiency;
    bool pwc{};
    double entropy_hot{};
    double entropy_cold{};
};

CycleReport cycle_report(const OttoCycle& c);

enum class RootStatus { Found, NotFound, MultipleRoots };

// Sign of net work just above the root: Rising means the cycle produces work
// for T_h above the critical value (the usual T_h > kappa T_l form).
enum class RootDirection { Rising, Falling };

struct CriticalTemperature {
    RootStatus status{RootStatus::NotFound};
    double t_hot{};  // valid when Found
    RootDirection direction{RootDirection::Rising};
    int sign_changes{};

    bool found() const noexcept { return status == RootStatus::Found; }
};

inline constexpr double kBracketLowFactor = 1.0 + 1e-9;
inline constexpr double kBracketHighFactor = 1e6;
inline constexpr int kPrescanPoints = 64;
inline constexpr double kRootRelativeTolerance = 1e-10;

// Zero of net work in T_h on [T_l (1 + 1e-9), T_l 1e6], by log-spaced
// pre-scan followed by bisection to kRootRelativeTolerance.
CriticalTemperature critical_hot_temperature(const LevelSpectrum& hot,
                                             const LevelSpectrum& cold,
                                             double t_cold);

}  // namespace qhe
