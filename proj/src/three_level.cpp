#include "qhe/three_level.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qhe/errors.hpp"

namespace qhe {

SpacingEndpoints::SpacingEndpoints(double d1h, double d2h, double d1l, double d2l)
    : d1h_(d1h), d2h_(d2h), d1l_(d1l), d2l_(d2l) {
    for (double d : {d1h, d2h, d1l, d2l}) {
        if (!(d > 0.0) || !std::isfinite(d)) {
            throw Error(Errc::InvalidSpacing, "SpacingEndpoints: all spacings must be positive");
        }
    }
}

SpacingEndpoints SpacingEndpoints::from_spectra(const LevelSpectrum& hot, const LevelSpectrum& cold) {
    if (hot.size() != 3 || cold.size() != 3) {
        throw Error(Errc::DimensionMismatch, "SpacingEndpoints: spectra must have exactly 3 levels");
    }
    return {hot[1] - hot[0], hot[2] - hot[1], cold[1] - cold[0], cold[2] - cold[1]};
}

double SpacingEndpoints::max_spacing() const noexcept { return std::max({d1h_, d2h_, d1l_, d2l_}); }

LevelSpectrum SpacingEndpoints::hot_spectrum() const { return LevelSpectrum({0.0, d1h_, d1h_ + d2h_}); }

LevelSpectrum SpacingEndpoints::cold_spectrum() const { return LevelSpectrum({0.0, d1l_, d1l_ + d2l_}); }

OttoCycle SpacingEndpoints::cycle(double t_hot, double t_cold) const {
    return OttoCycle(hot_spectrum(), cold_spectrum(), t_hot, t_cold);
}

std::string_view to_string(CaseLabel c) noexcept {
    switch (c) {
        case CaseLabel::I: return "I";
        case CaseLabel::II: return "II";
        case CaseLabel::III: return "III";
        case CaseLabel::IV: return "IV";
        case CaseLabel::Boundary: return "Boundary";
    }
    return "?";
}

std::string_view to_string(ThresholdKind k) noexcept {
    switch (k) {
        case ThresholdKind::Above: return "above";
        case ThresholdKind::Below: return "below";
        case ThresholdKind::Always: return "always";
        case ThresholdKind::Never: return "never";
    }
    return "?";
}

std::string_view to_string(SolutionRegion r) noexcept {
    switch (r) {
        case SolutionRegion::SolutionI: return "SolutionI";
        case SolutionRegion::SolutionII: return "SolutionII";
        case SolutionRegion::Neither: return "Neither";
    }
    return "?";
}

std::string_view to_string(Case2Subcase s) noexcept {
    switch (s) {
        case Case2Subcase::a: return "a";
        case Case2Subcase::b: return "b";
        case Case2Subcase::c: return "c";
        case Case2Subcase::d: return "d";
    }
    return "?";
}

CaseLabel classify_case(const SpacingEndpoints& e) {
    const double lower = e.d1h() - e.d1l();
    const double upper = e.d2h() - e.d2l();
    if (lower == 0.0 || upper == 0.0) return CaseLabel::Boundary;
    if (lower > 0.0) return upper > 0.0 ? CaseLabel::I : CaseLabel::II;
    return upper > 0.0 ? CaseLabel::III : CaseLabel::IV;
}

ShapeParams shape_params(const SpacingEndpoints& e) {
    const double lower = e.d1h() - e.d1l();
    if (lower == 0.0) {
        throw Error(Errc::XiUndefined, "shape_params: xi undefined for d1h == d1l");
    }
    return {1.0 + (e.d2h() - e.d2l()) / lower, e.d1l() / e.dl(), e.d1h() / e.dh()};
}

double theta(const SpacingEndpoints& e) {
    const ShapeParams sp = shape_params(e);
    const double denom = f_value(sp.xi, sp.eta);
    if (denom == 0.0) {
        throw Error(Errc::ThetaUndefined, "theta: F(xi, eta) vanishes");
    }
    return f_value(sp.xi, sp.lam) / denom;
}

double closed_form_work(const SpacingEndpoints& e, double t_hot, double t_cold) {
    if (!(t_hot > 0.0) || !(t_cold > 0.0)) {
        throw Error(Errc::InvalidTemperature, "closed_form_work: temperatures must be positive");
    }
    const double bh = 1.0 / t_hot;
    const double bl = 1.0 / t_cold;
    const double dh = e.dh(), dl = e.dl();
    const double d1h = e.d1h(), d1l = e.d1l();

    // Theta(Delta, Delta_1) and its mirror Theta(Delta_1, Delta).
    const double full = std::exp(-bh * dh) - std::exp(-bl * dl) + std::exp(-bh * dh - bl * d1l) -
                        std::exp(-bh * d1h - bl * dl);
    const double lower = std::exp(-bh * d1h) - std::exp(-bl * d1l) + std::exp(-bh * d1h - bl * dl) -
                         std::exp(-bh * dh - bl * d1l);

    const double zh = 1.0 + std::exp(-bh * d1h) + std::exp(-bh * dh);
    const double zl = 1.0 + std::exp(-bl * d1l) + std::exp(-bl * dl);
    return (full * (dh - dl) + lower * (d1h - d1l)) / (zh * zl);
}

bool high_t_pwc_sign(const SpacingEndpoints& e, double t_hot, double t_cold) {
    if (!(t_hot > 0.0) || !(t_cold > 0.0)) {
        throw Error(Errc::InvalidTemperature, "high_t_pwc_sign: temperatures must be positive");
    }
    const ShapeParams sp = shape_params(e);
    const double bracket =
        f_value(sp.xi, sp.eta) - (t_cold / t_hot) * (e.dh() / e.dl()) * f_value(sp.xi, sp.lam);
    return bracket * (e.d1h() - e.d1l()) > 0.0;
}

double kappa_high_t(const SpacingEndpoints& e) {
    const CaseLabel c = classify_case(e);
    if (c != CaseLabel::I) {
        std::string what = "kappa_high_t: defined for Case I only, got Case " + std::string(to_string(c));
        if (c == CaseLabel::II) {
            try {
                what += " subcase " + std::string(to_string(case2_subcase(e)));
            } catch (const Error&) {
                what += " boundary subcase";
            }
        }
        throw Error(Errc::NotApplicable, what);
    }
    return e.full_gap_ratio() * theta(e);
}

HighTThreshold high_t_threshold(const LevelSpectrum& hot, const LevelSpectrum& cold) {
    if (hot.size() != cold.size()) {
        throw Error(Errc::DimensionMismatch, "high_t_threshold: spectra differ in size");
    }
    const std::size_t n = hot.size();
    double sum_h = 0.0, sum_l = 0.0, sum_d = 0.0, cross_h = 0.0, cross_l = 0.0;
    for (std::size_t m = 0; m < n; ++m) {
        const double eh = hot[m] - hot.ground();
        const double el = cold[m] - cold.ground();
        const double d = eh - el;
        sum_h += eh;
        sum_l += el;
        sum_d += d;
        cross_h += eh * d;
        cross_l += el * d;
    }
    const double nn = static_cast<double>(n);
    const double c_hot = nn * cross_h - sum_h * sum_d;
    const double c_cold = nn * cross_l - sum_l * sum_d;

    // Work ~ c_cold T_h - c_hot T_l.
    if (c_cold > 0.0) {
        if (c_hot <= 0.0) return {ThresholdKind::Always, 0.0};
        return {ThresholdKind::Above, c_hot / c_cold};
    }
    if (c_cold < 0.0) {
        if (c_hot >= 0.0) return {ThresholdKind::Never, 0.0};
        return {ThresholdKind::Below, c_hot / c_cold};
    }
    return {c_hot < 0.0 ? ThresholdKind::Always : ThresholdKind::Never, 0.0};
}

HighTThreshold high_t_threshold(const SpacingEndpoints& e) {
    return high_t_threshold(e.hot_spectrum(), e.cold_spectrum());
}

RatioCoords ratio_coords(const SpacingEndpoints& e) {
    return {e.d1l() / e.d1h(), e.d2l() / e.d1h(), e.d2h() / e.d1h()};
}

bool case_one_presupposition(const RatioCoords& rc) noexcept { return rc.r1l < 1.0 && rc.r2h > rc.r2l; }

SolutionRegion solution_region(const RatioCoords& rc) {
    if (!case_one_presupposition(rc)) return SolutionRegion::Neither;
    const double plane = rc.r2h + rc.r1l - rc.r2l;  // vs 1
    const double surface = rc.r1l * rc.r2h;         // vs r2l
    if (plane > 1.0 && rc.r2l > surface) return SolutionRegion::SolutionI;
    if (plane < 1.0 && rc.r2l < surface) return SolutionRegion::SolutionII;
    return SolutionRegion::Neither;
}

bool beats_two_level(const SpacingEndpoints& e, double kappa) noexcept {
    return 1.0 < kappa && kappa < e.full_gap_ratio() && kappa < e.lower_gap_ratio();
}

LoosenessVerdict looseness_verdict(const SpacingEndpoints& e) {
    if (classify_case(e) != CaseLabel::I) {
        throw Error(Errc::NotApplicable, "looseness_verdict: defined for Case I only");
    }
    LoosenessVerdict v;
    v.kappa_high_t = kappa_high_t(e);
    v.two_level_full = e.full_gap_ratio();
    v.two_level_sub = e.lower_gap_ratio();
    v.looser = beats_two_level(e, v.kappa_high_t);
    return v;
}

Case2Subcase case2_subcase(const SpacingEndpoints& e) {
    if (classify_case(e) != CaseLabel::II) {
        throw Error(Errc::NotApplicable, "case2_subcase: defined for Case II only");
    }
    const ShapeParams sp = shape_params(e);
    const double f_eta = f_value(sp.xi, sp.eta);
    const double f_lam = f_value(sp.xi, sp.lam);
    if (f_eta == 0.0 || f_lam == 0.0) {
        throw Error(Errc::BoundarySubcase, "case2_subcase: F vanishes");
    }
    if (f_eta > 0.0) return f_lam > 0.0 ? Case2Subcase::a : Case2Subcase::b;
    return f_lam < 0.0 ? Case2Subcase::c : Case2Subcase::d;
}

ExactCriticalRatio exact_critical_ratio(const SpacingEndpoints& e, double t_cold) {
    ExactCriticalRatio out;
    out.root = critical_hot_temperature(e.hot_spectrum(), e.cold_spectrum(), t_cold);
    if (out.root.found()) out.ratio = out.root.t_hot / t_cold;
    return out;
}

}  // namespace qhe
