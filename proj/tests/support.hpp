// Test-only oracles and seeded samplers. Nothing here calls into the
// implementation paths it is used to check.

#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

namespace qhe::testing {

// splitmix64: per-sample seeds derived from (suite seed, sample index), so a
// sample's value does not depend on evaluation order.
inline std::uint64_t mix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

class SampleStream {
public:
    SampleStream(std::uint64_t suite_seed, std::uint64_t index)
        : state_(mix(suite_seed ^ mix(index))) {}

    double uniform() {  // [0, 1)
        state_ = mix(state_);
        return static_cast<double>(state_ >> 11) * 0x1.0p-53;
    }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    double log_uniform(double lo, double hi) { return std::exp(uniform(std::log(lo), std::log(hi))); }

private:
    std::uint64_t state_;
};

// Four spacings, each log-uniform on [1e-2, 1e2].
struct RawEndpoints {
    double d1h, d2h, d1l, d2l;
};

inline RawEndpoints sample_endpoints(SampleStream& s) {
    return {s.log_uniform(1e-2, 1e2), s.log_uniform(1e-2, 1e2), s.log_uniform(1e-2, 1e2),
            s.log_uniform(1e-2, 1e2)};
}

// Gibbs populations by the textbook formula, no shifting.
inline std::vector<double> direct_gibbs(const std::vector<double>& e, double t) {
    std::vector<double> w(e.size());
    double z = 0.0;
    for (std::size_t m = 0; m < e.size(); ++m) z += (w[m] = std::exp(-e[m] / t));
    for (double& x : w) x /= z;
    return w;
}

// Net work by direct population sum over ground-referenced energies.
inline double direct_work(const std::vector<double>& hot, const std::vector<double>& cold, double th,
                          double tl) {
    std::vector<double> eh(hot), el(cold);
    for (double& x : eh) x -= hot[0];
    for (double& x : el) x -= cold[0];
    const auto ph = direct_gibbs(eh, th);
    const auto pl = direct_gibbs(el, tl);
    double w = 0.0;
    for (std::size_t m = 0; m < eh.size(); ++m) w += (ph[m] - pl[m]) * (eh[m] - el[m]);
    return w;
}

inline std::vector<double> three_levels(double d1, double d2) { return {0.0, d1, d1 + d2}; }

// First sign change of f on a dense log grid, refined by a fixed number of
// halvings. Returns NaN if no change.
template <class F>
double grid_scan_root(F f, double lo, double hi, int points) {
    double prev_t = lo;
    double prev = f(lo);
    for (int i = 1; i < points; ++i) {
        const double t = std::exp(std::log(lo) + (std::log(hi) - std::log(lo)) * i / (points - 1));
        const double v = f(t);
        if ((prev < 0.0) != (v < 0.0)) {
            double a = prev_t, b = t;
            for (int k = 0; k < 200 && b - a > 1e-14 * a; ++k) {
                const double mid = 0.5 * (a + b);
                if ((f(mid) < 0.0) == (prev < 0.0)) a = mid; else b = mid;
            }
            return 0.5 * (a + b);
        }
        prev = v;
        prev_t = t;
    }
    return std::nan("");
}

// Eigenvalues through Eigen's general (non-Hermitian) complex solver, sorted.
inline std::vector<double> general_eigenvalues(const Eigen::MatrixXcd& m) {
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(m);
    std::vector<double> out;
    for (Eigen::Index i = 0; i < m.rows(); ++i) out.push_back(solver.eigenvalues()(i).real());
    std::sort(out.begin(), out.end());
    return out;
}

inline bool close_rel(double a, double b, double rel, double abs_floor = 0.0) {
    return std::abs(a - b) <= rel * std::max(std::abs(a), std::abs(b)) + abs_floor;
}

}  // namespace qhe::testing
