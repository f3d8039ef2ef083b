#include "qhe/cycle.hpp"

#include <cmath>

#include "qhe/errors.hpp"

namespace qhe {

OttoCycle::OttoCycle(LevelSpectrum hot, LevelSpectrum cold, double t_hot, double t_cold)
    : hot_(std::move(hot)), cold_(std::move(cold)), t_hot_(t_hot), t_cold_(t_cold) {
    if (hot_.size() != cold_.size()) {
        throw Error(Errc::DimensionMismatch, "OttoCycle: hot and cold spectra differ in size");
    }
    for (double t : {t_hot_, t_cold_}) {
        if (!(t > 0.0) || !std::isfinite(t)) {
            throw Error(Errc::InvalidTemperature, "OttoCycle: temperatures must be positive");
        }
    }
}

StrokeStates run_strokes(const OttoCycle& c) {
    StrokeStates s;
    s.end_stroke1 = gibbs_populations(c.hot(), c.t_hot()).populations;
    s.end_stroke2 = s.end_stroke1;
    s.end_stroke3 = gibbs_populations(c.cold(), c.t_cold()).populations;
    s.end_stroke4 = s.end_stroke3;
    return s;
}

namespace {

struct Populations {
    std::vector<double> hot;
    std::vector<double> cold;
    std::vector<double> shift;  // hot - cold, per level
};

double weight_sum(const LevelSpectrum& s, double t) {
    double z = 0.0;
    for (std::size_t k = 0; k < s.size(); ++k) z += std::exp(-(s[k] - s.ground()) / t);
    return z;
}

// p^h_m - p^l_m without subtracting two nearly equal populations. Each pair
// term w^h_m w^l_k - w^l_m w^h_k = exp(-a) - exp(-b) is written around the
// larger exponential with expm1, so the difference survives at high
// temperature where all weights approach 1.
std::vector<double> population_shift(const OttoCycle& c) {
    const LevelSpectrum& h = c.hot();
    const LevelSpectrum& l = c.cold();
    const double th = c.t_hot(), tl = c.t_cold();
    const std::size_t n = c.levels();
    const double norm = weight_sum(h, th) * weight_sum(l, tl);
    std::vector<double> shift(n, 0.0);
    for (std::size_t m = 0; m < n; ++m) {
        double acc = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            if (k == m) continue;
            const double a = (h[m] - h.ground()) / th + (l[k] - l.ground()) / tl;
            const double b = (l[m] - l.ground()) / tl + (h[k] - h.ground()) / th;
            const double gap = (l[m] - l[k]) / tl - (h[m] - h[k]) / th;  // b - a
            acc += gap >= 0.0 ? -std::exp(-a) * std::expm1(-gap) : std::exp(-b) * std::expm1(gap);
        }
        shift[m] = acc / norm;
    }
    return shift;
}

Populations equilibria(const OttoCycle& c) {
    return {gibbs_populations(c.hot(), c.t_hot()).populations,
            gibbs_populations(c.cold(), c.t_cold()).populations, population_shift(c)};
}

double work_from(const OttoCycle& c, const Populations& p) {
    double w = 0.0;
    for (std::size_t m = 1; m < c.levels(); ++m) {
        const double de = (c.hot()[m] - c.hot().ground()) - (c.cold()[m] - c.cold().ground());
        w += p.shift[m] * de;
    }
    return w;
}

double heat_from(const LevelSpectrum& s, const Populations& p) {
    double q = 0.0;
    for (std::size_t m = 1; m < s.size(); ++m) q += (s[m] - s.ground()) * p.shift[m];
    return q;
}

}  // namespace

double net_work(const OttoCycle& c) { return work_from(c, equilibria(c)); }

double heat_absorbed(const OttoCycle& c) { return heat_from(c.hot(), equilibria(c)); }

double heat_released(const OttoCycle& c) { return heat_from(c.cold(), equilibria(c)); }

std::optional<double> efficiency(const OttoCycle& c) {
    const Populations p = equilibria(c);
    const double w = work_from(c, p);
    const double q = heat_from(c.hot(), p);
    if (q > 0.0 && w > 0.0) return w / q;
    return std::nullopt;
}

bool pwc_holds(const OttoCycle& c) { return net_work(c) > 0.0; }

CycleReport cycle_report(const OttoCycle& c) {
    const Populations p = equilibria(c);
    CycleReport r;
    r.net_work = work_from(c, p);
    r.heat_in = heat_from(c.hot(), p);
    r.heat_out = heat_from(c.cold(), p);
    if (r.heat_in > 0.0 && r.net_work > 0.0) r.efficiency = r.net_work / r.heat_in;
    r.pwc = r.net_work > 0.0;
    r.entropy_hot = entropy(p.hot);
    r.entropy_cold = entropy(p.cold);
    return r;
}

namespace {

int sign_of(double x) { return (x > 0.0) - (x < 0.0); }

}  // namespace

CriticalTemperature critical_hot_temperature(const LevelSpectrum& hot,
                                             const LevelSpectrum& cold,
                                             double t_cold) {
    if (hot.size() != cold.size()) {
        throw Error(Errc::DimensionMismatch, "critical_hot_temperature: spectra differ in size");
    }
    if (!(t_cold > 0.0) || !std::isfinite(t_cold)) {
        throw Error(Errc::InvalidTemperature, "critical_hot_temperature: T_l must be positive");
    }
    auto work_at = [&](double t_hot) { return net_work(OttoCycle(hot, cold, t_hot, t_cold)); };

    const double lo = t_cold * kBracketLowFactor;
    const double hi = t_cold * kBracketHighFactor;
    const double log_lo = std::log(lo);
    const double log_hi = std::log(hi);

    std::vector<double> grid(kPrescanPoints);
    std::vector<int> signs(kPrescanPoints);
    for (int i = 0; i < kPrescanPoints; ++i) {
        const double f = static_cast<double>(i) / (kPrescanPoints - 1);
        grid[i] = i == 0 ? lo : (i == kPrescanPoints - 1 ? hi : std::exp(log_lo + f * (log_hi - log_lo)));
        signs[i] = sign_of(work_at(grid[i]));
    }

    // Sign changes between consecutive nonzero samples; exact zeros on the
    // grid are roots in their own right.
    CriticalTemperature out;
    int last = 0;
    std::size_t change_at = 0;
    std::optional<double> exact_root;
    for (int i = 0; i < kPrescanPoints; ++i) {
        if (signs[i] == 0) {
            if (i > 0 && i < kPrescanPoints - 1 && !exact_root) exact_root = grid[i];
            continue;
        }
        if (last != 0 && signs[i] != last) {
            ++out.sign_changes;
            change_at = static_cast<std::size_t>(i);
        }
        last = signs[i];
    }

    if (out.sign_changes == 0) {
        out.status = RootStatus::NotFound;
        return out;
    }
    if (out.sign_changes > 1) {
        out.status = RootStatus::MultipleRoots;
        return out;
    }

    // Walk back from change_at to the previous nonzero sample.
    std::size_t left = change_at - 1;
    while (signs[left] == 0) --left;
    double a = grid[left];
    double b = grid[change_at];
    const int sign_a = signs[left];
    out.direction = sign_a < 0 ? RootDirection::Rising : RootDirection::Falling;

    if (exact_root && *exact_root > a && *exact_root < b) {
        out.status = RootStatus::Found;
        out.t_hot = *exact_root;
        return out;
    }

    while ((b - a) > kRootRelativeTolerance * a) {
        const double mid = 0.5 * (a + b);
        const int s = sign_of(work_at(mid));
        if (s == 0) {
            a = b = mid;
            break;
        }
        if (s == sign_a) {
            a = mid;
        } else {
            b = mid;
        }
    }
    out.status = RootStatus::Found;
    out.t_hot = 0.5 * (a + b);
    return out;
}

}  // namespace qhe
