// exactdiag.hpp: finite-N Hamiltonian on the permutation-symmetric atomic
// sector tensored with two truncated boson modes.
//
// A symmetric state of N three-level atoms is an occupation triple
// (n1, n2, n3) with n1 + n2 + n3 = N. Collective operators act as
// J_mn = t_m^dag t_n on these triples (Schwinger bosons).

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "vdicke/errors.hpp"
#include "vdicke/meanfield.hpp"
#include "vdicke/model.hpp"
#include "vdicke/sparse.hpp"

namespace vdicke {

enum class Level : int { One = 1, Two = 2, Three = 3 };

struct Occupation {
    int n1;
    int n2;
    int n3;

    int operator[](Level l) const {
        switch (l) {
        case Level::One: return n1;
        case Level::Two: return n2;
        case Level::Three: return n3;
        }
        return 0;
    }
    int& operator[](Level l) {
        switch (l) {
        case Level::One: return n1;
        case Level::Two: return n2;
        default: return n3;
        }
    }
    bool operator==(const Occupation&) const = default;
};

/// Symmetric sector of N atoms, ordered lexicographically in (n3, n2).
class SymmetricBasis {
public:
    explicit SymmetricBasis(int n_atoms) : n_(n_atoms) {
        if (n_atoms < 1) throw ParameterError("SymmetricBasis: N must be >= 1");
        states_.reserve(static_cast<std::size_t>((n_ + 1) * (n_ + 2) / 2));
        for (int n3 = 0; n3 <= n_; ++n3)
            for (int n2 = 0; n2 <= n_ - n3; ++n2) states_.push_back({n_ - n2 - n3, n2, n3});
    }

    int n_atoms() const { return n_; }
    std::int64_t size() const { return static_cast<std::int64_t>(states_.size()); }
    const std::vector<Occupation>& states() const { return states_; }
    const Occupation& operator[](std::int64_t i) const { return states_[static_cast<std::size_t>(i)]; }

    std::int64_t index_of(const Occupation& s) const {
        if (s.n1 < 0 || s.n2 < 0 || s.n3 < 0 || s.n1 + s.n2 + s.n3 != n_)
            throw ParameterError("SymmetricBasis: occupation not in sector");
        // States with smaller n3 come first: sum_{k < n3} (N - k + 1).
        return static_cast<std::int64_t>(s.n3) * (n_ + 1) - static_cast<std::int64_t>(s.n3) * (s.n3 - 1) / 2
             + s.n2;
    }

private:
    int n_;
    std::vector<Occupation> states_;
};

inline SymmetricBasis build_basis(int n_atoms) { return SymmetricBasis(n_atoms); }

/// Matrix of J_mn on the symmetric sector.
inline SparseOperator collective_operator(const SymmetricBasis& basis, Level m, Level n) {
    std::vector<SparseEntry> entries;
    for (std::int64_t col = 0; col < basis.size(); ++col) {
        const Occupation& s = basis[col];
        if (m == n) {
            if (s[m] != 0) entries.push_back({col, col, static_cast<double>(s[m])});
            continue;
        }
        if (s[n] == 0) continue;
        Occupation t = s;
        t[n] -= 1;
        t[m] += 1;
        const double amp = std::sqrt(static_cast<double>(t[m]) * static_cast<double>(s[n]));
        entries.push_back({basis.index_of(t), col, amp});
    }
    return SparseOperator(basis.size(), entries);
}

struct TruncatedSpace {
    SymmetricBasis basis;
    int cutoff_a;
    int cutoff_b;

    std::int64_t dimension() const {
        return basis.size() * (cutoff_a + 1) * static_cast<std::int64_t>(cutoff_b + 1);
    }
    std::int64_t index(std::int64_t atom, int na, int nb) const {
        return (atom * (cutoff_a + 1) + na) * (cutoff_b + 1) + nb;
    }
};

inline constexpr std::int64_t kDefaultMaxDimension = 2'000'000;

inline TruncatedSpace make_space(int n_atoms, int cutoff_a, int cutoff_b,
                                 std::int64_t max_dimension = kDefaultMaxDimension) {
    if (cutoff_a < 1 || cutoff_b < 1) throw ParameterError("TruncatedSpace: cutoffs must be >= 1");
    TruncatedSpace space{SymmetricBasis(n_atoms), cutoff_a, cutoff_b};
    if (space.dimension() > max_dimension)
        throw CapacityError("TruncatedSpace: dimension " + std::to_string(space.dimension())
                            + " exceeds limit " + std::to_string(max_dimension));
    return space;
}

/// Full Hamiltonian with g / sqrt(N) couplings:
///   omega21 J22 + omega31 J33 + omega_a a^dag a + omega_b b^dag b
///   + g1/sqrt(N) (J13 + J31)(a^dag + a) + g2/sqrt(N) (J12 + J21)(b^dag + b).
inline SparseOperator build_hamiltonian(const ModelParams& p, const TruncatedSpace& space,
                                        std::int64_t max_dimension = kDefaultMaxDimension) {
    p.validate();
    if (space.cutoff_a < 1 || space.cutoff_b < 1)
        throw ParameterError("build_hamiltonian: cutoffs must be >= 1");
    if (space.dimension() > max_dimension)
        throw CapacityError("build_hamiltonian: dimension " + std::to_string(space.dimension())
                            + " exceeds limit " + std::to_string(max_dimension));

    const SymmetricBasis& basis = space.basis;
    const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(basis.n_atoms()));
    const double c1 = p.g1 * inv_sqrt_n;
    const double c2 = p.g2 * inv_sqrt_n;

    // Symmetric atomic couplings X13 = J13 + J31 and X12 = J12 + J21.
    const auto x13 = collective_operator(basis, Level::One, Level::Three).entries();
    const auto x12 = collective_operator(basis, Level::One, Level::Two).entries();

    std::vector<SparseEntry> entries;
    const std::int64_t ma = space.cutoff_a + 1, mb = space.cutoff_b + 1;
    entries.reserve(static_cast<std::size_t>(space.dimension()) * 9);

    for (std::int64_t atom = 0; atom < basis.size(); ++atom) {
        const Occupation& s = basis[atom];
        for (int na = 0; na < ma; ++na)
            for (int nb = 0; nb < mb; ++nb) {
                const double diag = p.omega21 * s.n2 + p.omega31 * s.n3 + p.omega_a * na + p.omega_b * nb;
                if (diag != 0.0) {
                    const std::int64_t i = space.index(atom, na, nb);
                    entries.push_back({i, i, diag});
                }
            }
    }

    // J13 (lowering level 3 into level 1) paired with a and a^dag; the
    // transposed entry supplies J31. Amplitudes are products of the same
    // integers in both orders, so the result is exactly symmetric.
    auto add_branch = [&](const std::vector<SparseEntry>& lower, double coupling, bool mode_a) {
        if (coupling == 0.0) return;
        for (const auto& e : lower) {
            const std::int64_t to_atom = e.row, from_atom = e.col;
            for (int na = 0; na < ma; ++na)
                for (int nb = 0; nb < mb; ++nb) {
                    const int n_mode = mode_a ? na : nb;
                    const int cut = mode_a ? space.cutoff_a : space.cutoff_b;
                    for (int shift : {-1, +1}) {
                        const int target = n_mode + shift;
                        if (target < 0 || target > cut) continue;
                        const double boson = std::sqrt(static_cast<double>(std::max(n_mode, target)));
                        const double v = coupling * e.value * boson;
                        const std::int64_t i = space.index(to_atom, mode_a ? target : na, mode_a ? nb : target);
                        const std::int64_t j = space.index(from_atom, na, nb);
                        entries.push_back({i, j, v});
                        entries.push_back({j, i, v});
                    }
                }
        }
    };
    add_branch(x13, c1, true);
    add_branch(x12, c2, false);
    return SparseOperator(space.dimension(), entries);
}

/// Diagonal sign vectors of the parity operators
///   Pi_l = (-1)^(a^dag a + J33),  Pi_r = (-1)^(b^dag b + J22),  Pi_g = Pi_l Pi_r.
struct ParityOperators {
    Eigen::VectorXd left;
    Eigen::VectorXd right;
    Eigen::VectorXd global;
};

inline ParityOperators parity_operators(const TruncatedSpace& space) {
    const std::int64_t d = space.dimension();
    ParityOperators p{Eigen::VectorXd(d), Eigen::VectorXd(d), Eigen::VectorXd(d)};
    for (std::int64_t atom = 0; atom < space.basis.size(); ++atom) {
        const Occupation& s = space.basis[atom];
        for (int na = 0; na <= space.cutoff_a; ++na)
            for (int nb = 0; nb <= space.cutoff_b; ++nb) {
                const std::int64_t i = space.index(atom, na, nb);
                p.left(i) = (na + s.n3) % 2 == 0 ? 1.0 : -1.0;
                p.right(i) = (nb + s.n2) % 2 == 0 ? 1.0 : -1.0;
                p.global(i) = (na + s.n3 + nb + s.n2) % 2 == 0 ? 1.0 : -1.0;
            }
    }
    return p;
}

/// Max-entry norm of [H, P] for a diagonal P: |H_ij (P_j - P_i)|.
inline double diagonal_commutator_norm(const SparseOperator& h, const Eigen::VectorXd& diag) {
    double worst = 0.0;
    for (const auto& e : h.entries())
        worst = std::max(worst, std::abs(e.value * (diag(e.col) - diag(e.row))));
    return worst;
}

struct ParityCheck {
    double left;
    double right;
    double global;
    double max() const { return std::max({left, right, global}); }
};

/// Commutator norms of H with Pi_l, Pi_r and Pi_g.
inline ParityCheck parity_check(const ModelParams& p, const TruncatedSpace& space) {
    const SparseOperator h = build_hamiltonian(p, space);
    const ParityOperators par = parity_operators(space);
    return {diagonal_commutator_norm(h, par.left), diagonal_commutator_norm(h, par.right),
            diagonal_commutator_norm(h, par.global)};
}

struct GroundState {
    double energy;
    Eigen::VectorXd vector;
    double residual;
    std::optional<double> excited_energy;
};

/// Lowest eigenpair of a symmetric H. With opts.nev >= 2 the next Ritz value
/// is also converged and returned as excited_energy.
inline GroundState ground_state(const SparseOperator& h, const LanczosOptions& opts = {}) {
    EigenResult r = lowest_eigenpairs(h, opts);
    GroundState g{r.energies[0], std::move(r.vectors[0]), r.residual, std::nullopt};
    if (r.energies.size() > 1) g.excited_energy = r.energies[1];
    return g;
}

struct GroundStateResult {
    double energy{0.0};
    double photon_a{0.0}; // <a^dag a> / N
    double photon_b{0.0};
    double pop2{0.0};     // <J22> / N
    double pop3{0.0};
    double parity_l{0.0};
    double parity_r{0.0};
    double parity_g{0.0};
    double gap{std::numeric_limits<double>::quiet_NaN()};
    double residual{0.0};
    int n_atoms{0};
    int cutoff_a{0};
    int cutoff_b{0};
    // Weight of the state on the highest retained photon numbers.
    double edge_weight_a{0.0};
    double edge_weight_b{0.0};
};

/// Scaled expectation values in a normalized state. Energy and gap are left
/// for the caller.
inline GroundStateResult observables(const TruncatedSpace& space, const Eigen::VectorXd& state) {
    if (state.size() != space.dimension())
        throw ParameterError("observables: state dimension does not match space");
    const double norm_sq = state.squaredNorm();
    if (std::abs(norm_sq - 1.0) > 1e-8) throw ParameterError("observables: state must be normalized");

    GroundStateResult r;
    const double n = static_cast<double>(space.basis.n_atoms());
    r.n_atoms = space.basis.n_atoms();
    r.cutoff_a = space.cutoff_a;
    r.cutoff_b = space.cutoff_b;
    for (std::int64_t atom = 0; atom < space.basis.size(); ++atom) {
        const Occupation& s = space.basis[atom];
        for (int na = 0; na <= space.cutoff_a; ++na)
            for (int nb = 0; nb <= space.cutoff_b; ++nb) {
                const double w = state(space.index(atom, na, nb)) * state(space.index(atom, na, nb));
                r.photon_a += w * na;
                r.photon_b += w * nb;
                r.pop2 += w * s.n2;
                r.pop3 += w * s.n3;
                const double pl = (na + s.n3) % 2 == 0 ? 1.0 : -1.0;
                const double pr = (nb + s.n2) % 2 == 0 ? 1.0 : -1.0;
                r.parity_l += w * pl;
                r.parity_r += w * pr;
                r.parity_g += w * pl * pr;
                if (na == space.cutoff_a) r.edge_weight_a += w;
                if (nb == space.cutoff_b) r.edge_weight_b += w;
            }
    }
    r.photon_a /= n;
    r.photon_b /= n;
    r.pop2 /= n;
    r.pop3 /= n;
    return r;
}

struct SolveOptions {
    LanczosOptions lanczos{};
    bool compute_gap{true};
    std::int64_t max_dimension{kDefaultMaxDimension};
};

/// Builds H on `space`, finds its ground state and evaluates observables.
inline GroundStateResult solve_point(const ModelParams& p, const TruncatedSpace& space,
                                     const SolveOptions& opts = {}) {
    const SparseOperator h = build_hamiltonian(p, space, opts.max_dimension);
    LanczosOptions lo = opts.lanczos;
    lo.nev = opts.compute_gap ? std::max(2, lo.nev) : 1;
    if (h.dimension() < lo.nev) lo.nev = 1;
    GroundState g = ground_state(h, lo);
    GroundStateResult r = observables(space, g.vector);
    r.energy = g.energy;
    r.residual = g.residual;
    if (g.excited_energy) r.gap = *g.excited_energy - g.energy;
    return r;
}

/// Starting cutoff per mode: max(8, ceil(6 N phi^2 + 10)), with phi^2 the
/// largest mean-field field amplitude of that mode over every stationary
/// branch present (so both competing condensates fit near first-order lines).
inline std::pair<int, int> default_cutoffs(const ModelParams& p, int n_atoms) {
    double phi_a_sq = 0.0, phi_b_sq = 0.0;
    for (const auto& b : stationary_branches(p)) {
        if (!b.physical) continue;
        phi_a_sq = std::max(phi_a_sq, b.solution.phi_a * b.solution.phi_a);
        phi_b_sq = std::max(phi_b_sq, b.solution.phi_b * b.solution.phi_b);
    }
    auto cut = [&](double phi_sq) {
        return std::max(8, static_cast<int>(std::ceil(6.0 * n_atoms * phi_sq + 10.0)));
    };
    return {cut(phi_a_sq), cut(phi_b_sq)};
}

struct CutoffTraceEntry {
    int cutoff_a;
    int cutoff_b;
    std::int64_t dimension;
    GroundStateResult result;
};

struct CutoffConvergence {
    TruncatedSpace space;
    GroundStateResult result; // observables on `space`
    std::vector<CutoffTraceEntry> trace;
};

class CutoffCapacityError : public CapacityError {
public:
    CutoffCapacityError(const std::string& what, std::vector<CutoffTraceEntry> trace)
        : CapacityError(what), trace_(std::move(trace)) {}
    const std::vector<CutoffTraceEntry>& trace() const { return trace_; }

private:
    std::vector<CutoffTraceEntry> trace_;
};

/// Doubles both cutoffs until photon_a and photon_b move by less than `tol`
/// between successive spaces. Returns the first space confirmed by its
/// doubled successor, together with the full trace.
inline CutoffConvergence converge_cutoffs(const ModelParams& p, int n_atoms, int start_a, int start_b,
                                          double tol, const SolveOptions& opts = {}) {
    if (!(tol > 0.0)) throw ParameterError("converge_cutoffs: tol must be positive");
    std::vector<CutoffTraceEntry> trace;
    int ca = std::max(1, start_a), cb = std::max(1, start_b);
    std::optional<TruncatedSpace> previous;
    for (;;) {
        TruncatedSpace space{SymmetricBasis(n_atoms), ca, cb};
        if (space.dimension() > opts.max_dimension)
            throw CutoffCapacityError("converge_cutoffs: dimension " + std::to_string(space.dimension())
                                          + " exceeds limit before convergence",
                                      trace);
        GroundStateResult r = solve_point(p, space, opts);
        trace.push_back({ca, cb, space.dimension(), r});
        if (previous) {
            const GroundStateResult& prev = trace[trace.size() - 2].result;
            if (std::abs(r.photon_a - prev.photon_a) < tol && std::abs(r.photon_b - prev.photon_b) < tol)
                return {*previous, prev, trace};
        }
        previous = space;
        ca *= 2;
        cb *= 2;
    }
}

} // namespace vdicke
