#include "qhe/thermo.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>

#include "qhe/errors.hpp"

namespace qhe {

namespace {

void require_temperature(double t) {
    if (!(t > 0.0) || !std::isfinite(t)) {
        throw Error(Errc::InvalidTemperature, "temperature must be positive and finite");
    }
}

// exp(-(E_m - E_0)/T); the ground term is 1, the rest lie in (0, 1).
std::vector<double> shifted_weights(const LevelSpectrum& s, double t) {
    const auto e = s.energies();
    std::vector<double> w(e.size());
    for (std::size_t m = 0; m < e.size(); ++m) w[m] = std::exp(-(e[m] - e[0]) / t);
    return w;
}

double sum(const std::vector<double>& v) {
    double acc = 0.0;
    for (double x : v) acc += x;
    return acc;
}

void check_point(const HamiltonianFamily& f, std::span<const double> p, const char* what) {
    if (p.size() != f.parameter_count) {
        throw Error(Errc::DimensionMismatch,
                    std::string(what) + ": expected " + std::to_string(f.parameter_count) +
                        " parameters, got " + std::to_string(p.size()));
    }
}

std::vector<double> offset_point(std::span<const double> p, std::span<const double> d, double scale) {
    std::vector<double> out(p.begin(), p.end());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += scale * d[i];
    return out;
}

void require_nondegenerate(const Eigen::VectorXd& e) {
    const double span = e(e.size() - 1) - e(0);
    for (Eigen::Index i = 1; i < e.size(); ++i) {
        if (!(e(i) - e(i - 1) > kDegeneracyThreshold * span)) {
            throw Error(Errc::DegenerateEigenbasis,
                        "eigenbasis is degenerate at levels " + std::to_string(i - 1) + "/" +
                            std::to_string(i));
        }
    }
}

}  // namespace

double partition_function(const LevelSpectrum& s, double temperature) {
    require_temperature(temperature);
    return std::exp(-s.ground() / temperature) * sum(shifted_weights(s, temperature));
}

double log_partition_function(const LevelSpectrum& s, double temperature) {
    require_temperature(temperature);
    return -s.ground() / temperature + std::log(sum(shifted_weights(s, temperature)));
}

ThermalState gibbs_populations(const LevelSpectrum& s, double temperature) {
    require_temperature(temperature);
    auto w = shifted_weights(s, temperature);
    const double z = sum(w);
    for (double& x : w) x /= z;
    return ThermalState{temperature, 1.0 / temperature, std::move(w)};
}

double internal_energy(const LevelSpectrum& s, const ThermalState& state) {
    if (state.populations.size() != s.size()) {
        throw Error(Errc::DimensionMismatch, "internal_energy: population/spectrum size mismatch");
    }
    double u = 0.0;
    for (std::size_t m = 0; m < s.size(); ++m) u += state.populations[m] * s[m];
    return u;
}

double entropy(std::span<const double> populations) {
    double s = 0.0;
    for (double p : populations) {
        if (p > 0.0) s -= p * std::log(p);
    }
    return s;
}

HermitianOperator::HermitianOperator(Eigen::MatrixXcd matrix) : m_(std::move(matrix)) {
    if (m_.rows() != m_.cols() || m_.rows() == 0) {
        throw Error(Errc::InvalidParameter, "HermitianOperator: matrix must be square and non-empty");
    }
    const double dev = (m_ - m_.adjoint()).cwiseAbs().maxCoeff();
    if (!(dev <= 1e-12)) {
        throw Error(Errc::InvalidParameter, "HermitianOperator: matrix is not Hermitian");
    }
}

HermitianOperator HamiltonianFamily::operator()(std::span<const double> point) const {
    check_point(*this, point, "HamiltonianFamily");
    HermitianOperator h = evaluate(point);
    if (h.dimension() != dimension) {
        throw Error(Errc::DimensionMismatch, "HamiltonianFamily: output dimension changed");
    }
    return h;
}

Eigenbasis eigenbasis(const HermitianOperator& h) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h.matrix());
    if (solver.info() != Eigen::Success) {
        throw Error(Errc::DegenerateEigenbasis, "eigen decomposition failed");
    }
    Eigenbasis out{solver.eigenvalues(), solver.eigenvectors()};
    for (Eigen::Index k = 0; k < out.vectors.cols(); ++k) {
        Eigen::Index imax = 0;
        out.vectors.col(k).cwiseAbs().maxCoeff(&imax);
        const std::complex<double> c = out.vectors(imax, k);
        out.vectors.col(k) *= std::conj(c) / std::abs(c);
    }
    return out;
}

DifferentialSplit decompose_differential(const HamiltonianFamily& family,
                                         std::span<const double> point,
                                         std::span<const double> displacement) {
    check_point(family, point, "decompose_differential");
    check_point(family, displacement, "decompose_differential");
    const HermitianOperator h0 = family(point);
    const auto moved = offset_point(point, displacement, 1.0);
    const HermitianOperator h1 = family(moved);

    DifferentialSplit out;
    out.basis = eigenbasis(h0);
    require_nondegenerate(out.basis.energies);

    const Eigen::MatrixXcd& u = out.basis.vectors;
    out.delta_h = u.adjoint() * (h1.matrix() - h0.matrix()) * u;
    out.work_part = out.delta_h.diagonal().asDiagonal();
    out.heat_part = out.delta_h;
    out.heat_part.diagonal().setZero();
    return out;
}

std::vector<double> feynman_hellman_residual(const HamiltonianFamily& family,
                                             std::span<const double> point,
                                             std::span<const double> direction,
                                             double step) {
    check_point(family, point, "feynman_hellman_residual");
    check_point(family, direction, "feynman_hellman_residual");
    if (!(step > 0.0)) throw Error(Errc::InvalidParameter, "feynman_hellman_residual: step must be positive");

    const Eigenbasis basis = eigenbasis(family(point));
    require_nondegenerate(basis.energies);

    const auto plus = offset_point(point, direction, step);
    const auto minus = offset_point(point, direction, -step);
    const HermitianOperator hp = family(plus);
    const HermitianOperator hm = family(minus);
    const Eigen::MatrixXcd dh = (hp.matrix() - hm.matrix()) / (2.0 * step);
    const Eigen::VectorXd de = (eigenbasis(hp).energies - eigenbasis(hm).energies) / (2.0 * step);

    std::vector<double> out(family.dimension);
    for (std::size_t m = 0; m < family.dimension; ++m) {
        const auto col = basis.vectors.col(static_cast<Eigen::Index>(m));
        const double expectation = (col.adjoint() * dh * col)(0, 0).real();
        out[m] = std::abs(expectation - de(static_cast<Eigen::Index>(m)));
    }
    return out;
}

double off_diagonal_residual(const HamiltonianFamily& family,
                             std::span<const double> point,
                             std::span<const double> displacement) {
    const DifferentialSplit split = decompose_differential(family, point, displacement);
    const auto moved = offset_point(point, displacement, 1.0);
    const Eigenbasis next = eigenbasis(family(moved));
    const Eigen::MatrixXcd overlap = split.basis.vectors.adjoint() * next.vectors;
    const Eigen::VectorXd& e = split.basis.energies;

    double worst = 0.0;
    for (Eigen::Index m = 0; m < e.size(); ++m) {
        for (Eigen::Index n = 0; n < e.size(); ++n) {
            if (m == n) continue;
            const std::complex<double> predicted = (e(n) - e(m)) * overlap(m, n);
            worst = std::max(worst, std::abs(split.delta_h(m, n) - predicted));
        }
    }
    return worst;
}

}  // namespace qhe
