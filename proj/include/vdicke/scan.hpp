// scan.hpp: parameter sweeps over the mean-field and finite-N solvers.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <exception>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "vdicke/errors.hpp"
#include "vdicke/exactdiag.hpp"
#include "vdicke/fluctuations.hpp"
#include "vdicke/meanfield.hpp"
#include "vdicke/model.hpp"

namespace vdicke {

/// Runs fn(i) for i in [0, count) on up to `jobs` threads. Each result lands
/// in its own slot, so output order never depends on scheduling.
template <class T, class Fn>
std::vector<T> parallel_map(std::size_t count, unsigned jobs, Fn&& fn) {
    std::vector<T> out(count);
    jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
    if (jobs == 1) {
        for (std::size_t i = 0; i < count; ++i) out[i] = fn(i);
        return out;
    }
    std::vector<std::exception_ptr> errors(jobs);
    std::vector<std::thread> workers;
    for (unsigned w = 0; w < jobs; ++w)
        workers.emplace_back([&, w] {
            try {
                for (std::size_t i = w; i < count; i += jobs) out[i] = fn(i);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    for (auto& t : workers) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    return out;
}

/// Evenly spaced samples lo..hi. Two axes with identical bounds and counts
/// produce bitwise-identical coordinates, so square grids sample g1 = g2 exactly.
inline double grid_coordinate(double lo, double hi, int count, int i) {
    if (count == 1) return lo;
    if (i == count - 1) return hi;
    return lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
}

struct GridSpec {
    double g1_min{0.0};
    double g1_max{1.0};
    double g2_min{0.0};
    double g2_max{1.0};
    int n1{2};
    int n2{2};
    ModelParams base{};

    void validate() const {
        if (!(g1_min >= 0.0) || !(g2_min >= 0.0)) throw ParameterError("GridSpec: coupling bounds must be >= 0");
        if (!(g1_max > g1_min) || !(g2_max > g2_min)) throw ParameterError("GridSpec: bounds must be ordered");
        if (n1 < 2 || n2 < 2) throw ParameterError("GridSpec: grid counts must be >= 2");
        base.validate();
    }
};

struct FiniteNFields {
    int n_atoms{0};
    double photon_a{0.0};
    double photon_b{0.0};
    int cutoff_a{0};
    int cutoff_b{0};
};

struct SweepRecord {
    double g1{0.0};
    double g2{0.0};
    PhaseLabel phase{PhaseLabel::Normal};
    double psi2{0.0};
    double psi3{0.0};
    double phi_a{0.0};
    double phi_b{0.0};
    double energy{0.0};
    bool bistable{false};
    bool valley{false};
    std::optional<FiniteNFields> finite_n;
};

inline SweepRecord make_record(const ModelParams& p, const MeanFieldSolution& s) {
    SweepRecord r;
    r.g1 = p.g1;
    r.g2 = p.g2;
    r.phase = s.phase;
    r.psi2 = s.psi2;
    r.psi3 = s.psi3;
    r.phi_a = s.phi_a;
    r.phi_b = s.phi_b;
    r.energy = s.energy;
    r.bistable = s.bistable;
    r.valley = s.valley;
    return r;
}

inline SweepRecord classify_record(const ModelParams& p) { return make_record(p, classify(p)); }

/// Mean-field classification on every grid point; row-major with g1 as the
/// slow index.
inline std::vector<SweepRecord> phase_diagram(const GridSpec& grid, unsigned jobs = 1) {
    grid.validate();
    const auto count = static_cast<std::size_t>(grid.n1) * static_cast<std::size_t>(grid.n2);
    return parallel_map<SweepRecord>(count, jobs, [&](std::size_t k) {
        const int i = static_cast<int>(k / static_cast<std::size_t>(grid.n2));
        const int j = static_cast<int>(k % static_cast<std::size_t>(grid.n2));
        ModelParams p = grid.base;
        p.g1 = grid_coordinate(grid.g1_min, grid.g1_max, grid.n1, i);
        p.g2 = grid_coordinate(grid.g2_min, grid.g2_max, grid.n2, j);
        return classify_record(p);
    });
}

enum class BoundaryKind { GtildeC1, GtildeC2, NormalLeft, NormalRight };

inline std::string_view to_string(BoundaryKind k) {
    switch (k) {
    case BoundaryKind::GtildeC1: return "gtilde_c1";
    case BoundaryKind::GtildeC2: return "gtilde_c2";
    case BoundaryKind::NormalLeft: return "normal_left";
    case BoundaryKind::NormalRight: return "normal_right";
    }
    return "?";
}

inline BoundaryKind boundary_from_string(std::string_view s) {
    if (s == "gtilde_c1") return BoundaryKind::GtildeC1;
    if (s == "gtilde_c2") return BoundaryKind::GtildeC2;
    if (s == "normal_left") return BoundaryKind::NormalLeft;
    if (s == "normal_right") return BoundaryKind::NormalRight;
    throw ParameterError("unknown boundary '" + std::string(s) + "'");
}

struct BoundaryPoint {
    double abscissa;  // the coupling that is held fixed
    double ordinate;  // closed-form critical coupling
    double zero_mode; // bisection root of eps_-^2
};

/// Agreement required between the closed-form and zero-mode boundary.
inline constexpr double kBoundaryAgreement = 1e-8;

namespace detail {

// Upper end of a bracket in which eps_-^2 of the family turns negative.
template <class Family>
double expand_bracket(Family&& family, double start) {
    double hi = start;
    for (int k = 0; k < 200; ++k) {
        if (squared_frequencies(family(hi)).first < 0.0) return hi;
        hi *= 2.0;
    }
    throw BracketError("expand_bracket: eps_-^2 never turns negative");
}

} // namespace detail

/// One boundary curve: for each abscissa the closed-form critical coupling
/// and the zero mode of the matching fluctuation block. Throws if the two
/// routes disagree by more than kBoundaryAgreement.
///
/// gtilde_c2 / normal_right use g1 as abscissa; gtilde_c1 / normal_left use g2.
inline std::vector<BoundaryPoint> trace_boundary(const ModelParams& base, BoundaryKind which, double lo,
                                                 double hi, int steps) {
    base.validate();
    if (steps < 1) throw ParameterError("trace_boundary: steps must be >= 1");
    if (!(hi >= lo) || !(lo >= 0.0)) throw ParameterError("trace_boundary: invalid range");

    std::vector<BoundaryPoint> out;
    for (int i = 0; i < steps; ++i) {
        const double x = grid_coordinate(lo, hi, steps, i);
        ModelParams p = base;
        double closed = 0.0;
        std::function<QuadraticBosonForm(double)> family;
        switch (which) {
        case BoundaryKind::GtildeC2:
            p.g1 = x;
            closed = renormalized_critical_g2(p);
            family = [p](double g) {
                ModelParams q = p;
                q.g2 = g;
                return right_branch_form(q);
            };
            break;
        case BoundaryKind::GtildeC1:
            p.g2 = x;
            closed = renormalized_critical_g1(p);
            family = [p](double g) {
                ModelParams q = p;
                q.g1 = g;
                return left_branch_form(q);
            };
            break;
        case BoundaryKind::NormalLeft:
            p.g2 = x;
            closed = critical_g1(p);
            family = [p](double g) {
                ModelParams q = p;
                q.g1 = g;
                return normal_phase_forms(q).left;
            };
            break;
        case BoundaryKind::NormalRight:
            p.g1 = x;
            closed = critical_g2(p);
            family = [p](double g) {
                ModelParams q = p;
                q.g2 = g;
                return normal_phase_forms(q).right;
            };
            break;
        }
        const double upper = detail::expand_bracket(family, 1.0);
        const double root = critical_coupling_by_zero_mode(family, {0.0, upper}, 1e-12);
        if (std::abs(root - closed) > kBoundaryAgreement)
            throw BracketError("trace_boundary: zero-mode root " + std::to_string(root)
                               + " disagrees with closed form " + std::to_string(closed));
        out.push_back({x, closed, root});
    }
    return out;
}

/// Fraction of cell centres in the window [g_c1, 2 g_c1] x [g_c2, 2 g_c2]
/// flagged bistable, with omega31 = ratio * omega21.
inline double overlap_area(const ModelParams& base, double ratio, int resolution, unsigned jobs = 1) {
    if (!(ratio >= 1.0)) throw ParameterError("overlap_area: ratio must be >= 1");
    if (resolution < 1) throw ParameterError("overlap_area: resolution must be >= 1");
    ModelParams p = base;
    p.omega31 = ratio * base.omega21;
    p.validate();
    const double gc1 = critical_g1(p), gc2 = critical_g2(p);
    const auto n = static_cast<std::size_t>(resolution);
    const auto flags = parallel_map<char>(n * n, jobs, [&](std::size_t k) {
        ModelParams q = p;
        q.g1 = gc1 * (1.0 + (static_cast<double>(k / n) + 0.5) / resolution);
        q.g2 = gc2 * (1.0 + (static_cast<double>(k % n) + 0.5) / resolution);
        return static_cast<char>(classify(q).bistable ? 1 : 0);
    });
    const auto hits = std::count(flags.begin(), flags.end(), 1);
    return static_cast<double>(hits) / static_cast<double>(n * n);
}

struct FiniteNSpec {
    int n_atoms{10};
    double tol{1e-4};                 // cutoff convergence on photon_a, photon_b
    std::optional<int> cutoff_a;      // start cutoffs; default_cutoffs() when unset
    std::optional<int> cutoff_b;
    SolveOptions solve{};
};

/// Finite-N observables at p with converged cutoffs.
inline CutoffConvergence finite_n_point(const ModelParams& p, const FiniteNSpec& spec) {
    const auto [da, db] = default_cutoffs(p, spec.n_atoms);
    SolveOptions so = spec.solve;
    return converge_cutoffs(p, spec.n_atoms, spec.cutoff_a.value_or(da), spec.cutoff_b.value_or(db), spec.tol,
                            so);
}

/// Order parameters along g1 at fixed g2, optionally with finite-N observables.
inline std::vector<SweepRecord> line_cut(const ModelParams& base, double g2, double g1_min, double g1_max,
                                         int steps, const std::optional<FiniteNSpec>& finite_n = std::nullopt,
                                         unsigned jobs = 1) {
    if (steps < 1) throw ParameterError("line_cut: steps must be >= 1");
    if (!(g1_max >= g1_min) || !(g1_min >= 0.0)) throw ParameterError("line_cut: invalid g1 range");
    ModelParams b = base;
    b.g2 = g2;
    b.validate();
    std::optional<FiniteNSpec> fn = finite_n;
    if (fn) fn->solve.compute_gap = false; // only photon numbers are recorded
    return parallel_map<SweepRecord>(static_cast<std::size_t>(steps), jobs, [&](std::size_t i) {
        ModelParams p = b;
        p.g1 = grid_coordinate(g1_min, g1_max, steps, static_cast<int>(i));
        SweepRecord r = classify_record(p);
        if (fn) {
            const CutoffConvergence c = finite_n_point(p, *fn);
            r.finite_n = FiniteNFields{fn->n_atoms, c.result.photon_a, c.result.photon_b,
                                       c.space.cutoff_a, c.space.cutoff_b};
        }
        return r;
    });
}

/// Classifications at (g_c1 -+ delta, g_c2 -+ delta') in the order
/// (-,-), (+,-), (-,+), (+,+), with delta' = delta g_c2 / g_c1 so that the
/// (+,+) point lies on the ray g1/g_c1 = g2/g_c2.
inline std::vector<SweepRecord> probe_quadruple_point(const ModelParams& base, double delta) {
    if (!(delta > 0.0)) throw ParameterError("probe_quadruple_point: delta must be positive");
    const double gc1 = critical_g1(base), gc2 = critical_g2(base);
    const double eps = delta / gc1;
    std::vector<SweepRecord> out;
    for (auto [s2, s1] : {std::pair{-1.0, -1.0}, std::pair{-1.0, 1.0}, std::pair{1.0, -1.0}, std::pair{1.0, 1.0}}) {
        ModelParams p = base;
        p.g1 = gc1 * (1.0 + s1 * eps);
        p.g2 = gc2 * (1.0 + s2 * eps);
        out.push_back(classify_record(p));
    }
    return out;
}

} // namespace vdicke
