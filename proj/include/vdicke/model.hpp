// model.hpp: parameters, phase labels and closed-form critical couplings of
// the two-mode V-type Dicke model.
//
// Level |1> is the energy reference, so only the transition frequencies
// omega21 and omega31 are stored. Mode a drives 1<->3 (left branch), mode b
// drives 1<->2 (right branch).

#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <string_view>
#include <utility>

#include "vdicke/errors.hpp"

namespace vdicke {

struct ModelParams {
    double omega21{1.0};
    double omega31{1.0};
    double omega_a{1.0};
    double omega_b{1.0};
    double g1{0.0};
    double g2{0.0};

    /// Throws ParameterError naming the first offending field.
    void validate() const {
        auto positive = [](double v, const char* name) {
            if (!(v > 0.0) || !std::isfinite(v))
                throw ParameterError(std::string(name) + " must be a finite positive number");
        };
        auto nonneg = [](double v, const char* name) {
            if (!(v >= 0.0) || !std::isfinite(v))
                throw ParameterError(std::string(name) + " must be a finite non-negative number");
        };
        positive(omega21, "omega21");
        positive(omega31, "omega31");
        positive(omega_a, "omega_a");
        positive(omega_b, "omega_b");
        nonneg(g1, "g1");
        nonneg(g2, "g2");
    }

    /// Mirror image: left and right branches exchanged.
    ModelParams exchanged() const {
        return {omega31, omega21, omega_b, omega_a, g2, g1};
    }

    bool operator==(const ModelParams&) const = default;
};

enum class PhaseLabel { Normal, LeftSR, RightSR, LeftRightSR };

inline std::string_view to_string(PhaseLabel p) {
    switch (p) {
    case PhaseLabel::Normal: return "Normal";
    case PhaseLabel::LeftSR: return "LeftSR";
    case PhaseLabel::RightSR: return "RightSR";
    case PhaseLabel::LeftRightSR: return "LeftRightSR";
    }
    return "?";
}

inline PhaseLabel phase_from_string(std::string_view s) {
    if (s == "Normal") return PhaseLabel::Normal;
    if (s == "LeftSR") return PhaseLabel::LeftSR;
    if (s == "RightSR") return PhaseLabel::RightSR;
    if (s == "LeftRightSR") return PhaseLabel::LeftRightSR;
    throw ParameterError("unknown phase label '" + std::string(s) + "'");
}

/// Standard Dicke threshold of the left branch, sqrt(omega_a * omega31) / 2.
inline double critical_g1(const ModelParams& p) {
    return 0.5 * std::sqrt(p.omega_a * p.omega31);
}

/// Standard Dicke threshold of the right branch, sqrt(omega_b * omega21) / 2.
inline double critical_g2(const ModelParams& p) {
    return 0.5 * std::sqrt(p.omega_b * p.omega21);
}

/// mu_l = g_c1^2 / g1^2. Values <= 1 mean the left branch is above threshold.
inline double mu_left(const ModelParams& p) {
    if (!(p.g1 > 0.0)) throw ParameterError("mu_left undefined for g1 = 0");
    const double gc = critical_g1(p);
    return (gc * gc) / (p.g1 * p.g1);
}

inline double mu_right(const ModelParams& p) {
    if (!(p.g2 > 0.0)) throw ParameterError("mu_right undefined for g2 = 0");
    const double gc = critical_g2(p);
    return (gc * gc) / (p.g2 * p.g2);
}

namespace detail {

// Threshold of the branch (omega_field, omega_level) when the other branch
// (omega_other) is condensed with ratio mu <= 1.
inline double renormalized_threshold(double omega_field, double omega_level,
                                     double omega_other, double mu) {
    const double shifted = 2.0 * omega_level * omega_field
                         + omega_other * omega_field * (1.0 - mu) / mu;
    return 0.5 * std::sqrt(shifted / (1.0 + mu));
}

} // namespace detail

/// Right-branch threshold inside the left superradiant phase. Requires g1 >= g_c1.
inline double renormalized_critical_g2(const ModelParams& p) {
    if (!(p.g1 >= critical_g1(p)))
        throw DomainError("renormalized_critical_g2 requires g1 >= g_c1");
    return detail::renormalized_threshold(p.omega_b, p.omega21, p.omega31, mu_left(p));
}

/// Left-branch threshold inside the right superradiant phase. Requires g2 >= g_c2.
inline double renormalized_critical_g1(const ModelParams& p) {
    if (!(p.g2 >= critical_g2(p)))
        throw DomainError("renormalized_critical_g1 requires g2 >= g_c2");
    return detail::renormalized_threshold(p.omega_a, p.omega31, p.omega21, mu_right(p));
}

struct AlphaBeta {
    double alpha;
    double beta;
};

/// alpha = omega31 / mu_l = 4 g1^2 / omega_a and beta = omega21 / mu_r = 4 g2^2 / omega_b.
///
/// Both routes are evaluated; a relative mismatch above 1e-12 indicates a
/// broken invariant and throws. The coupling form is returned.
inline AlphaBeta alpha_beta(const ModelParams& p) {
    const double alpha = 4.0 * p.g1 * p.g1 / p.omega_a;
    const double beta = 4.0 * p.g2 * p.g2 / p.omega_b;
    const double alpha_mu = p.omega31 / mu_left(p);
    const double beta_mu = p.omega21 / mu_right(p);
    if (std::abs(alpha - alpha_mu) > 1e-12 * alpha || std::abs(beta - beta_mu) > 1e-12 * beta)
        throw DomainError("alpha/beta closed forms disagree");
    return {alpha, beta};
}

/// Coupling-squared strengths without the g > 0 precondition; used by the energy surface.
inline std::pair<double, double> coupling_strengths(const ModelParams& p) {
    return {4.0 * p.g1 * p.g1 / p.omega_a, 4.0 * p.g2 * p.g2 / p.omega_b};
}

/// Relative tolerance for the balanced condition alpha = beta.
inline constexpr double kBalancedTolerance = 1e-9;

/// True when both branches compete on equal terms: alpha = beta and
/// omega31 = omega21. Only then does a two-branch stationary family exist.
inline bool is_balanced(const ModelParams& p) {
    const auto [alpha, beta] = coupling_strengths(p);
    const auto close = [](double x, double y) {
        return std::abs(x - y) <= kBalancedTolerance * std::max(x, y);
    };
    return close(alpha, beta) && close(p.omega31, p.omega21);
}

} // namespace vdicke
