// meanfield.hpp: scaled ground-state energy surface, stationary branches,
// phase classification and a brute-force minimization oracle.
//
// With x = psi2^2, y = psi3^2 and psi1^2 = 1 - x - y the field amplitudes are
// eliminated at their optima, leaving
//
//   h0 = omega21 x + omega31 y - psi1^2 (alpha y + beta x),
//   alpha = 4 g1^2 / omega_a,  beta = 4 g2^2 / omega_b.
//
// The Hessian of h0 in (x, y) has determinant -(alpha - beta)^2, so an
// interior stationary point is a saddle unless alpha = beta. Minima therefore
// sit on the single-branch edges, or on the whole valley x + y = const when
// the two branches are balanced.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <vector>

#include "vdicke/errors.hpp"
#include "vdicke/model.hpp"

namespace vdicke {

struct MeanFieldSolution {
    double psi1{1.0};
    double psi2{0.0};
    double psi3{0.0};
    double phi_a{0.0};
    double phi_b{0.0};
    double energy{0.0};
    PhaseLabel phase{PhaseLabel::Normal};
    bool bistable{false};
    int degeneracy{1};
    // Set on the balanced line: the reported point is one member of a
    // continuous family of degenerate minima with fixed psi2^2 + psi3^2.
    bool valley{false};
};

enum class BranchKind {
    Normal,   // psi2 = psi3 = 0
    Left,     // psi2 = 0
    Right,    // psi3 = 0
    Balanced, // symmetric split on the alpha = beta line
    Mixed,    // general two-branch solution off the balanced line; a saddle
};

struct StationaryPoint {
    BranchKind kind;
    MeanFieldSolution solution;
    bool physical;
};

/// h0(psi2, psi3). Throws DomainError outside the unit disc.
inline double energy(const ModelParams& p, double psi2, double psi3) {
    const double x = psi2 * psi2;
    const double y = psi3 * psi3;
    if (x + y > 1.0) throw DomainError("energy: psi2^2 + psi3^2 must not exceed 1");
    const auto [alpha, beta] = coupling_strengths(p);
    const double psi1_sq = 1.0 - x - y;
    return p.omega21 * x + p.omega31 * y - psi1_sq * (alpha * y + beta * x);
}

struct EnergyGradient {
    double d_psi2;
    double d_psi3;
};

/// Analytic gradient of h0. Each component is 2 psi_k times the bracket of
/// the corresponding stationarity condition.
inline EnergyGradient energy_gradient(const ModelParams& p, double psi2, double psi3) {
    const double x = psi2 * psi2;
    const double y = psi3 * psi3;
    const auto [alpha, beta] = coupling_strengths(p);
    const double psi1_sq = 1.0 - x - y;
    const double bracket2 = p.omega21 + alpha * y + beta * x - beta * psi1_sq;
    const double bracket3 = p.omega31 + beta * x + alpha * y - alpha * psi1_sq;
    return {2.0 * psi2 * bracket2, 2.0 * psi3 * bracket3};
}

/// Completes an amplitude pair into a full solution: psi1 >= 0 and the field
/// amplitudes from their elimination relations.
inline MeanFieldSolution make_solution(const ModelParams& p, double psi2, double psi3) {
    MeanFieldSolution s;
    s.psi2 = psi2;
    s.psi3 = psi3;
    s.psi1 = std::sqrt(std::max(0.0, 1.0 - psi2 * psi2 - psi3 * psi3));
    s.phi_a = -2.0 * p.g1 * s.psi1 * psi3 / p.omega_a;
    s.phi_b = -2.0 * p.g2 * s.psi1 * psi2 / p.omega_b;
    s.energy = energy(p, psi2, psi3);
    return s;
}

namespace detail {

inline MeanFieldSolution labelled(MeanFieldSolution s, PhaseLabel phase, int degeneracy) {
    s.phase = phase;
    s.degeneracy = degeneracy;
    return s;
}

inline bool left_exists(const ModelParams& p) { return p.g1 > 0.0 && p.g1 >= critical_g1(p); }
inline bool right_exists(const ModelParams& p) { return p.g2 > 0.0 && p.g2 >= critical_g2(p); }

// Positive branch amplitudes (psi3 for left, psi2 for right).
inline double left_amplitude(const ModelParams& p) { return std::sqrt((1.0 - mu_left(p)) / 2.0); }
inline double right_amplitude(const ModelParams& p) { return std::sqrt((1.0 - mu_right(p)) / 2.0); }

} // namespace detail

/// Every stationary point of h0 that exists at these parameters, one entry
/// per sign pattern. The Mixed branch is listed with physical = false.
inline std::vector<StationaryPoint> stationary_branches(const ModelParams& p) {
    p.validate();
    std::vector<StationaryPoint> out;
    out.push_back({BranchKind::Normal,
                   detail::labelled(make_solution(p, 0.0, 0.0), PhaseLabel::Normal, 1), true});

    if (detail::left_exists(p)) {
        const double a = detail::left_amplitude(p);
        for (double sign : {1.0, -1.0})
            out.push_back({BranchKind::Left,
                           detail::labelled(make_solution(p, 0.0, sign * a), PhaseLabel::LeftSR, 2),
                           true});
    }
    if (detail::right_exists(p)) {
        const double a = detail::right_amplitude(p);
        for (double sign : {1.0, -1.0})
            out.push_back({BranchKind::Right,
                           detail::labelled(make_solution(p, sign * a, 0.0), PhaseLabel::RightSR, 2),
                           true});
    }

    if (p.g1 > 0.0 && p.g2 > 0.0) {
        const auto [alpha, beta] = coupling_strengths(p);
        if (is_balanced(p)) {
            const double mu_l = mu_left(p);
            const double mu_r = mu_right(p);
            if (mu_l < 1.0 && mu_r < 1.0) {
                const double a3 = std::sqrt(1.0 - mu_l) / 2.0;
                const double a2 = std::sqrt(1.0 - mu_r) / 2.0;
                for (double s2 : {1.0, -1.0})
                    for (double s3 : {1.0, -1.0}) {
                        auto sol = detail::labelled(make_solution(p, s2 * a2, s3 * a3),
                                                    PhaseLabel::LeftRightSR, 4);
                        sol.valley = true;
                        out.push_back({BranchKind::Balanced, sol, true});
                    }
            }
        } else {
            const double d2 = (alpha - beta) * (alpha - beta);
            const double x = (2.0 * alpha * (p.omega21 - beta)
                              - (p.omega31 - alpha) * (alpha + beta)) / d2;
            const double y = (2.0 * beta * (p.omega31 - alpha)
                              - (p.omega21 - beta) * (alpha + beta)) / d2;
            if (x > 0.0 && y > 0.0 && x + y <= 1.0) {
                for (double s2 : {1.0, -1.0})
                    for (double s3 : {1.0, -1.0})
                        out.push_back({BranchKind::Mixed,
                                       detail::labelled(make_solution(p, s2 * std::sqrt(x),
                                                                      s3 * std::sqrt(y)),
                                                        PhaseLabel::LeftRightSR, 4),
                                       false});
            }
        }
    }
    return out;
}

/// Left condensate is a local minimum: above g_c1 and the right branch
/// below its renormalized threshold.
inline bool left_locally_stable(const ModelParams& p) {
    return p.g1 > critical_g1(p) && p.g2 < renormalized_critical_g2(p);
}

inline bool right_locally_stable(const ModelParams& p) {
    return p.g2 > critical_g2(p) && p.g1 < renormalized_critical_g1(p);
}

/// Absolute energy gap below which LeftSR and RightSR count as tied.
inline constexpr double kTieTolerance = 1e-12;

/// Thermodynamic phase at p: the admissible branch of lowest h0.
///
/// On the balanced line above threshold the symmetric LeftRightSR split is
/// returned (degeneracy 4, valley set). Off that line the Mixed branch never
/// wins. bistable is set when both single-branch condensates are local minima,
/// or when their energies tie; a tie reports the branch with larger
/// psi2^2 + psi3^2.
inline MeanFieldSolution classify(const ModelParams& p) {
    p.validate();
    const bool balanced = is_balanced(p);

    if (balanced && p.g1 > 0.0 && p.g2 > 0.0 && mu_left(p) < 1.0 && mu_right(p) < 1.0) {
        const double a3 = std::sqrt(1.0 - mu_left(p)) / 2.0;
        const double a2 = std::sqrt(1.0 - mu_right(p)) / 2.0;
        auto sol = detail::labelled(make_solution(p, a2, a3), PhaseLabel::LeftRightSR, 4);
        sol.valley = true;
        return sol;
    }

    MeanFieldSolution best = detail::labelled(make_solution(p, 0.0, 0.0), PhaseLabel::Normal, 1);
    const bool has_left = detail::left_exists(p);
    const bool has_right = detail::right_exists(p);
    MeanFieldSolution left, right;
    if (has_left) {
        left = detail::labelled(make_solution(p, 0.0, detail::left_amplitude(p)),
                                PhaseLabel::LeftSR, 2);
        if (left.energy < best.energy) best = left;
    }
    if (has_right) {
        right = detail::labelled(make_solution(p, detail::right_amplitude(p), 0.0),
                                 PhaseLabel::RightSR, 2);
        if (right.energy < best.energy) best = right;
    }

    bool tie = false;
    if (has_left && has_right && std::abs(left.energy - right.energy) <= kTieTolerance
        && best.phase != PhaseLabel::Normal) {
        tie = true;
        const double exc_left = left.psi3 * left.psi3;
        const double exc_right = right.psi2 * right.psi2;
        best = exc_left >= exc_right ? left : right;
    }

    best.bistable = tie || (!balanced && has_left && has_right && left_locally_stable(p)
                            && right_locally_stable(p));
    return best;
}

/// Label an arbitrary minimizer by which amplitudes are macroscopic.
inline PhaseLabel label_from_amplitudes(double psi2, double psi3, double threshold = 1e-5) {
    const bool right = psi2 * psi2 > threshold;
    const bool left = psi3 * psi3 > threshold;
    if (left && right) return PhaseLabel::LeftRightSR;
    if (left) return PhaseLabel::LeftSR;
    if (right) return PhaseLabel::RightSR;
    return PhaseLabel::Normal;
}

/// Global minimum of h0 by exhaustive search.
///
/// A resolution x resolution grid over [-1, 1]^2 is evaluated inside the unit
/// disc. The lowest discrete local minima are then polished by a compass
/// search whose step is halved down to 1e-13. Uses energy() only.
inline MeanFieldSolution brute_force_minimize(const ModelParams& p, int resolution = 400) {
    p.validate();
    if (resolution < 100) throw ParameterError("brute_force_minimize: resolution must be >= 100");

    const int n = resolution;
    const double h = 2.0 / (n - 1);
    const double inf = std::numeric_limits<double>::infinity();
    auto coord = [&](int i) { return -1.0 + h * i; };
    auto safe_energy = [&](double s2, double s3) {
        return s2 * s2 + s3 * s3 > 1.0 ? inf : energy(p, s2, s3);
    };

    std::vector<double> grid(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            grid[static_cast<std::size_t>(i) * n + j] = safe_energy(coord(i), coord(j));

    struct Seed {
        double e;
        int i, j;
    };
    std::vector<Seed> seeds;
    auto at = [&](int i, int j) {
        if (i < 0 || j < 0 || i >= n || j >= n) return inf;
        return grid[static_cast<std::size_t>(i) * n + j];
    };
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const double e = at(i, j);
            if (e == inf) continue;
            if (e <= at(i - 1, j) && e <= at(i + 1, j) && e <= at(i, j - 1) && e <= at(i, j + 1))
                seeds.push_back({e, i, j});
        }
    constexpr std::size_t kPolished = 64;
    const std::size_t keep = std::min(kPolished, seeds.size());
    std::partial_sort(seeds.begin(), seeds.begin() + static_cast<std::ptrdiff_t>(keep), seeds.end(),
                      [](const Seed& a, const Seed& b) {
                          if (a.e != b.e) return a.e < b.e;
                          return a.i != b.i ? a.i < b.i : a.j < b.j;
                      });

    constexpr std::array<std::array<double, 2>, 8> dirs{{
        {1, 0}, {-1, 0}, {0, 1}, {0, -1}, {1, 1}, {1, -1}, {-1, 1}, {-1, -1}}};

    double best_e = inf, best2 = 0.0, best3 = 0.0;
    for (std::size_t k = 0; k < keep; ++k) {
        double s2 = coord(seeds[k].i), s3 = coord(seeds[k].j);
        double e = seeds[k].e;
        double step = h;
        for (int iter = 0; iter < 100000 && step > 1e-13; ++iter) {
            double cand_e = e, c2 = s2, c3 = s3;
            for (const auto& d : dirs) {
                const double t2 = s2 + step * d[0], t3 = s3 + step * d[1];
                const double te = safe_energy(t2, t3);
                if (te < cand_e) {
                    cand_e = te;
                    c2 = t2;
                    c3 = t3;
                }
            }
            if (cand_e < e) {
                e = cand_e;
                s2 = c2;
                s3 = c3;
            } else {
                step *= 0.5;
            }
        }
        if (e < best_e) {
            best_e = e;
            best2 = s2;
            best3 = s3;
        }
    }

    MeanFieldSolution sol = make_solution(p, best2, best3);
    sol.phase = label_from_amplitudes(best2, best3);
    sol.degeneracy = sol.phase == PhaseLabel::Normal ? 1 : sol.phase == PhaseLabel::LeftRightSR ? 4 : 2;
    return sol;
}

} // namespace vdicke
