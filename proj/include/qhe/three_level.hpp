// three_level.hpp - positive-work analysis of 3-level Otto engines.
//
// A 3-level cycle is fully described by its four spacings: lower (d1) and
// upper (d2) gap while in contact with the hot bath (h) and the cold bath (l).
// Everything here works in those coordinates, with the ground level at zero.

#pragma once

#include <optional>
#include <string_view>

#include "qhe/cycle.hpp"
#include "qhe/spectrum.hpp"

namespace qhe {

class SpacingEndpoints {
public:
    // Throws Error{InvalidSpacing} unless all four spacings are positive.
    SpacingEndpoints(double d1h, double d2h, double d1l, double d2l);

    // Requires 3-level spectra.
    static SpacingEndpoints from_spectra(const LevelSpectrum& hot, const LevelSpectrum& cold);

    double d1h() const noexcept { return d1h_; }
    double d2h() const noexcept { return d2h_; }
    double d1l() const noexcept { return d1l_; }
    double d2l() const noexcept { return d2l_; }
    double dh() const noexcept { return d1h_ + d2h_; }
    double dl() const noexcept { return d1l_ + d2l_; }
    double max_spacing() const noexcept;

    LevelSpectrum hot_spectrum() const;   // (0, d1h, dh)
    LevelSpectrum cold_spectrum() const;  // (0, d1l, dl)
    OttoCycle cycle(double t_hot, double t_cold) const;

    // Two-level reference thresholds.
    double full_gap_ratio() const noexcept { return dh() / dl(); }     // dh / dl
    double lower_gap_ratio() const noexcept { return d1h_ / d1l_; }    // d1h / d1l
    double upper_gap_ratio() const noexcept { return d2h_ / d2l_; }    // d2h / d2l

private:
    double d1h_, d2h_, d1l_, d2l_;
};

enum class CaseLabel { I, II, III, IV, Boundary };
std::string_view to_string(CaseLabel c) noexcept;

// Signs of (d1h - d1l, d2h - d2l): I (+,+), II (+,-), III (-,+), IV (-,-).
// An exactly zero difference gives Boundary.
CaseLabel classify_case(const SpacingEndpoints& e);

struct ShapeParams {
    double xi{};   // 1 + (d2h - d2l) / (d1h - d1l)
    double eta{};  // d1l / dl
    double lam{};  // d1h / dh
};

ShapeParams shape_params(const SpacingEndpoints& e);

// F(xi, x) = (2 xi - 1) + (2 - xi) x
constexpr double f_value(double xi, double x) noexcept { return (2.0 * xi - 1.0) + (2.0 - xi) * x; }

// F(xi, lam) / F(xi, eta).
double theta(const SpacingEndpoints& e);

// Net work as the two-term exponential expression over Z^h Z^l. Independent
// of net_work() on the equivalent cycle, which sums populations directly.
double closed_form_work(const SpacingEndpoints& e, double t_hot, double t_cold);

// Leading high-temperature form of the positive-work condition:
// [F(xi,eta) - (T_l/T_h)(dh/dl) F(xi,lam)] (d1h - d1l) > 0.
bool high_t_pwc_sign(const SpacingEndpoints& e, double t_hot, double t_cold);

// High-temperature critical ratio (dh/dl) theta. Case I only; any other case
// throws Error{NotApplicable} naming the case (and Case-II subcase).
double kappa_high_t(const SpacingEndpoints& e);

// Shape of the leading high-temperature condition for any spectrum pair,
// from the covariance of level energies with their stroke-2 shifts:
//   net work ~ C_l / T_l - C_h / T_h,  C_s = N sum E_s dE - sum E_s sum dE.
enum class ThresholdKind {
    Above,   // work iff T_h > ratio T_l
    Below,   // work iff T_h < ratio T_l
    Always,  // work at every temperature pair
    Never,   // no work at any temperature pair
};
std::string_view to_string(ThresholdKind k) noexcept;

struct HighTThreshold {
    ThresholdKind kind{ThresholdKind::Never};
    double ratio{};  // meaningful for Above / Below
};

HighTThreshold high_t_threshold(const LevelSpectrum& hot, const LevelSpectrum& cold);
HighTThreshold high_t_threshold(const SpacingEndpoints& e);

struct RatioCoords {
    double r1l{};  // d1l / d1h
    double r2l{};  // d2l / d1h
    double r2h{};  // d2h / d1h
};

RatioCoords ratio_coords(const SpacingEndpoints& e);

enum class SolutionRegion { SolutionI, SolutionII, Neither };
std::string_view to_string(SolutionRegion r) noexcept;

// Case-I presupposition in ratio coordinates: r1l < 1 and r2h > r2l.
bool case_one_presupposition(const RatioCoords& rc) noexcept;

SolutionRegion solution_region(const RatioCoords& rc);

// True iff 1 < kappa < dh/dl and kappa < d1h/d1l.
bool beats_two_level(const SpacingEndpoints& e, double kappa) noexcept;

struct LoosenessVerdict {
    double kappa_high_t{};
    double two_level_full{};  // dh / dl
    double two_level_sub{};   // d1h / d1l
    bool looser{};
};

// Case I only; throws Error{NotApplicable} otherwise.
LoosenessVerdict looseness_verdict(const SpacingEndpoints& e);

enum class Case2Subcase { a, b, c, d };
std::string_view to_string(Case2Subcase s) noexcept;

// Sign pattern of (F(xi,eta), F(xi,lam)): a (+,+), b (+,-), c (-,-), d (-,+).
// Throws NotApplicable outside Case II, BoundarySubcase on an exact zero.
Case2Subcase case2_subcase(const SpacingEndpoints& e);

// Exact (finite-temperature) critical ratio T_h*/T_l at the given T_l.
struct ExactCriticalRatio {
    CriticalTemperature root;
    double ratio{};  // valid when root.found()
};

ExactCriticalRatio exact_critical_ratio(const SpacingEndpoints& e, double t_cold);

}  // namespace qhe
