// fluctuations.hpp: two-mode quadratic boson forms
//
//   H = freq1 c^dag c + freq2 d^dag d + coupling (c^dag + c)(d^dag + d),
//
// their Bogoliubov spectrum, the blocks that describe fluctuations about the
// normal and single-branch superradiant phases, and zero-mode critical points.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <utility>

#include <Eigen/Dense>

#include "vdicke/errors.hpp"
#include "vdicke/model.hpp"

namespace vdicke {

struct QuadraticBosonForm {
    double freq1{1.0};
    double freq2{1.0};
    double coupling{0.0};

    void validate() const {
        if (!(freq1 > 0.0) || !(freq2 > 0.0))
            throw ParameterError("QuadraticBosonForm: frequencies must be positive");
        if (!std::isfinite(coupling)) throw ParameterError("QuadraticBosonForm: coupling must be finite");
    }
};

struct FluctuationSpectrum {
    double eps_minus{0.0};
    double eps_plus{0.0};
    bool stable{true};
    // Signed squared lower frequency; negative when the form is unstable.
    double eps_minus_sq{0.0};
    // Largest gap between closed-form and numerically diagonalized squared
    // frequencies, relative to max(freq1, freq2)^2.
    double symplectic_mismatch{0.0};
};

/// Squared normal-mode frequencies (eps_-^2, eps_+^2) in closed form.
///
/// eps_-^2 is taken from the product eps_-^2 eps_+^2 = w1 w2 (w1 w2 - 4 lambda^2)
/// so it stays accurate near a zero mode.
inline std::pair<double, double> squared_frequencies(const QuadraticBosonForm& f) {
    const double w1 = f.freq1, w2 = f.freq2, lam = f.coupling;
    const double diff = w1 * w1 - w2 * w2;
    const double root = std::sqrt(diff * diff + 16.0 * lam * lam * w1 * w2);
    const double plus_sq = 0.5 * (w1 * w1 + w2 * w2 + root);
    const double minus_sq = w1 * w2 * (w1 * w2 - 4.0 * lam * lam) / plus_sq;
    return {minus_sq, plus_sq};
}

/// Symplectic eigenvalues from the 4x4 dynamical matrix eta * M, where
/// H = 1/2 Psi^dag M Psi with Psi = (c, d, c^dag, d^dag) and
/// eta = diag(1, 1, -1, -1). Returned as squared frequencies, ascending;
/// an unstable mode shows up as a negative square.
inline std::pair<double, double> symplectic_squared_frequencies(const QuadraticBosonForm& f) {
    Eigen::Matrix4d m = Eigen::Matrix4d::Zero();
    const double lam = f.coupling;
    m(0, 0) = f.freq1;
    m(1, 1) = f.freq2;
    m(2, 2) = f.freq1;
    m(3, 3) = f.freq2;
    for (int i : {0, 2})
        for (int j : {1, 3}) {
            m(i, j) = lam;
            m(j, i) = lam;
        }
    const Eigen::Matrix4d eta = Eigen::Vector4d(1, 1, -1, -1).asDiagonal();
    Eigen::EigenSolver<Eigen::Matrix4d> solver(eta * m, false);
    std::array<double, 4> sq{};
    for (int k = 0; k < 4; ++k) {
        const std::complex<double> ev = solver.eigenvalues()(k);
        sq[static_cast<std::size_t>(k)] = (ev * ev).real();
    }
    // Eigenvalues come in pairs +-eps; each square appears twice.
    std::sort(sq.begin(), sq.end());
    return {0.5 * (sq[0] + sq[1]), 0.5 * (sq[2] + sq[3])};
}

/// Bogoliubov spectrum of a two-mode form. Unstable forms are reported with
/// stable = false, eps_minus = 0 and the negative eps_minus_sq. The closed
/// form is cross-checked against the dynamical-matrix route.
inline FluctuationSpectrum diagonalize(const QuadraticBosonForm& f) {
    f.validate();
    const auto [minus_sq, plus_sq] = squared_frequencies(f);
    const auto [num_minus_sq, num_plus_sq] = symplectic_squared_frequencies(f);
    const double scale = std::max(f.freq1, f.freq2);
    FluctuationSpectrum s;
    s.symplectic_mismatch = std::max(std::abs(minus_sq - num_minus_sq),
                                     std::abs(plus_sq - num_plus_sq)) / (scale * scale);
    s.eps_minus_sq = minus_sq;
    s.eps_plus = std::sqrt(plus_sq);
    s.stable = minus_sq >= 0.0;
    s.eps_minus = s.stable ? std::sqrt(minus_sq) : 0.0;
    return s;
}

/// Right-branch fluctuations inside the left superradiant phase.
inline QuadraticBosonForm right_branch_form(const ModelParams& p) {
    if (!(p.g1 >= critical_g1(p)) || !(p.g1 > 0.0))
        throw DomainError("right_branch_form requires g1 >= g_c1");
    const double mu = mu_left(p);
    return {p.omega_b, p.omega21 + p.omega31 * (1.0 - mu) / (2.0 * mu),
            p.g2 * std::sqrt((1.0 + mu) / 2.0)};
}

/// Left-branch fluctuations inside the right superradiant phase.
inline QuadraticBosonForm left_branch_form(const ModelParams& p) {
    if (!(p.g2 >= critical_g2(p)) || !(p.g2 > 0.0))
        throw DomainError("left_branch_form requires g2 >= g_c2");
    const double mu = mu_right(p);
    return {p.omega_a, p.omega31 + p.omega21 * (1.0 - mu) / (2.0 * mu),
            p.g1 * std::sqrt((1.0 + mu) / 2.0)};
}

struct NormalPhaseForms {
    QuadraticBosonForm left;
    QuadraticBosonForm right;
};

/// Decoupled fluctuation blocks about the normal phase.
inline NormalPhaseForms normal_phase_forms(const ModelParams& p) {
    p.validate();
    return {{p.omega_a, p.omega31, p.g1}, {p.omega_b, p.omega21, p.g2}};
}

struct CouplingInterval {
    double lo;
    double hi;
};

/// Coupling at which eps_-^2 of a one-parameter family of forms crosses zero,
/// found by bisection to `abs_tol`.
///
/// `family` maps a coupling value to a QuadraticBosonForm. Throws
/// BracketError if eps_-^2 has the same sign at both ends.
template <class Family>
double critical_coupling_by_zero_mode(Family&& family, CouplingInterval bracket,
                                      double abs_tol = 1e-10) {
    auto f = [&](double g) { return squared_frequencies(family(g)).first; };
    double lo = bracket.lo, hi = bracket.hi;
    double f_lo = f(lo);
    const double f_hi = f(hi);
    if (f_lo == 0.0) return lo;
    if (f_hi == 0.0) return hi;
    if ((f_lo > 0.0) == (f_hi > 0.0))
        throw BracketError("critical_coupling_by_zero_mode: no sign change of eps_-^2 in bracket");
    // Bisection halves the interval each step; stop on tolerance or when the
    // midpoint no longer moves in floating point.
    while (hi - lo > abs_tol) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const double f_mid = f(mid);
        if (f_mid == 0.0) return mid;
        if ((f_mid > 0.0) == (f_lo > 0.0)) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

} // namespace vdicke
