// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "vdicke/exactdiag.hpp"
#include "vdicke/fluctuations.hpp"
#include "vdicke/meanfield.hpp"
#include "vdicke/model.hpp"
#include "vdicke/scan.hpp"

using namespace vdicke;

namespace {

struct Verdict {
    bool pass;
    std::string detail;
};

ModelParams unit(double g1 = 0.0, double g2 = 0.0) { return {1.0, 1.0, 1.0, 1.0, g1, g2}; }

std::string fmt(const char* f, double a) {
    char buf[128];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

// 1. classify vs brute-force minimization on a 50x50 grid.
Verdict oracle_equivalence() {
    constexpr int n = 50;
    double worst = 0.0;
    int compared = 0, mismatches = 0;
    for (double ratio : {1.0, 1.7}) {
        const ModelParams base{1.0, ratio, 1.0, 1.0, 0.0, 0.0};
        const double gc1 = critical_g1(base), gc2 = critical_g2(base);
        std::vector<PhaseLabel> label(n * n);
        std::vector<PhaseLabel> oracle(n * n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                ModelParams p = base;
                p.g1 = grid_coordinate(0.0, 2.0 * gc1, n, i);
                p.g2 = grid_coordinate(0.0, 2.0 * gc2, n, j);
                const auto s = classify(p);
                const auto o = brute_force_minimize(p, 400);
                worst = std::max(worst, std::abs(s.energy - o.energy));
                label[i * n + j] = s.phase;
                oracle[i * n + j] = o.phase;
            }
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                bool interior = true;
                for (int di = -1; di <= 1; ++di)
                    for (int dj = -1; dj <= 1; ++dj) {
                        const int a = i + di, b = j + dj;
                        if (a < 0 || b < 0 || a >= n || b >= n) continue;
                        if (label[a * n + b] != label[i * n + j]) interior = false;
                    }
                if (!interior) continue;
                ++compared;
                if (oracle[i * n + j] != label[i * n + j]) ++mismatches;
            }
    }
    return {worst <= 1e-6 && mismatches == 0,
            fmt("max |dE| = %.2e", worst) + ", label mismatches " + std::to_string(mismatches) + " of "
                + std::to_string(compared) + " interior points"};
}

// 2. Zero modes of the fluctuation blocks reproduce the closed-form couplings.
Verdict critical_points() {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> w(0.2, 3.0), s(1.0, 5.0);
    double worst_root = 0.0, worst_reduction = 0.0, worst_eps = 0.0;
    auto root_of = [](auto family, double guess) {
        double hi = std::max(guess, 1e-3);
        while (squared_frequencies(family(hi)).first >= 0.0) hi *= 2.0;
        return critical_coupling_by_zero_mode(family, {0.0, hi}, 1e-12);
    };
    for (int k = 0; k < 100; ++k) {
        const ModelParams base{w(rng), w(rng), w(rng), w(rng), 0.0, 0.0};
        const double gc1 = critical_g1(base), gc2 = critical_g2(base);
        const double r1 = root_of(
            [&](double g) {
                ModelParams q = base;
                q.g1 = g;
                return normal_phase_forms(q).left;
            },
            gc1);
        const double r2 = root_of(
            [&](double g) {
                ModelParams q = base;
                q.g2 = g;
                return normal_phase_forms(q).right;
            },
            gc2);
        ModelParams p = base;
        p.g1 = gc1 * s(rng);
        const double gt2 = renormalized_critical_g2(p);
        const double rt2 = root_of(
            [&](double g) {
                ModelParams q = p;
                q.g2 = g;
                return right_branch_form(q);
            },
            gt2);
        ModelParams q = base;
        q.g2 = gc2 * s(rng);
        const double gt1 = renormalized_critical_g1(q);
        const double rt1 = root_of(
            [&](double g) {
                ModelParams t = q;
                t.g1 = g;
                return left_branch_form(t);
            },
            gt1);
        worst_root = std::max({worst_root, std::abs(r1 - gc1), std::abs(r2 - gc2), std::abs(rt2 - gt2),
                               std::abs(rt1 - gt1)});

        ModelParams at2 = p;
        at2.g2 = gt2;
        ModelParams at1 = q;
        at1.g1 = gt1;
        worst_eps = std::max({worst_eps, diagonalize(right_branch_form(at2)).eps_minus,
                              diagonalize(left_branch_form(at1)).eps_minus});

        ModelParams red = base;
        red.g1 = gc1;
        worst_reduction = std::max(worst_reduction, std::abs(renormalized_critical_g2(red) - gc2));
        red = base;
        red.g2 = gc2;
        worst_reduction = std::max(worst_reduction, std::abs(renormalized_critical_g1(red) - gc1));
    }
    return {worst_root <= 1e-8 && worst_reduction <= 1e-12,
            fmt("max |bisection - formula| = %.2e", worst_root) + fmt(", max reduction error = %.2e", worst_reduction)
                + fmt(", max eps_- at closed form = %.1e", worst_eps)};
}

// 3. Four phases meet at (g_c1, g_c2) when omega31 = omega21.
Verdict quadruple_point() {
    const ModelParams base = unit();
    const auto r = probe_quadruple_point(base, 1e-3 * critical_g1(base));
    const bool ok = r.size() == 4 && r[0].phase == PhaseLabel::Normal && r[1].phase == PhaseLabel::LeftSR
                 && r[2].phase == PhaseLabel::RightSR && r[3].phase == PhaseLabel::LeftRightSR;
    std::string d;
    for (const auto& x : r) d += std::string(to_string(x.phase)) + " ";
    return {ok, "probes: " + d};
}

// 4. First-order jump of phi_a^2 across g1 = 1.5 g_c1 at g2 = 1.5 g_c2.
Verdict first_order_jump() {
    const double g = 0.75;
    const auto cut = line_cut(unit(), g, 0.5, 1.0, 101);
    double before = 0.0, at = -1.0;
    for (const auto& r : cut) {
        if (r.g1 < g) before = std::max(before, r.phi_a * r.phi_a);
        if (r.g1 == g) at = r.phi_a * r.phi_a;
    }
    // One-sided limit, just outside the balanced-line tolerance.
    const auto above = classify(unit(g * (1.0 + 1e-8), g));
    const double limit = above.phi_a * above.phi_a;
    double branch_value = 0.0;
    for (const auto& b : stationary_branches(unit(g, g)))
        if (b.kind == BranchKind::Left) branch_value = b.solution.phi_a * b.solution.phi_a;
    const bool ok = before <= 1e-12 && std::abs(at - 0.22569) <= 1e-5 && std::abs(at - 0.2256944444444) <= 1e-6
                 && std::abs(limit - 0.4513888888889) <= 1e-6 && above.phase == PhaseLabel::LeftSR
                 && std::abs(2.0 * at - branch_value) <= 1e-14;
    return {ok, fmt("phi_a^2: below %.2e", before) + fmt(", at crossing %.8f", at) + fmt(", above %.8f", limit)
                    + fmt(", |2 diag - branch| = %.1e", std::abs(2.0 * at - branch_value))};
}

// 5. Second-order transition along g2 = 0.
Verdict second_order() {
    double worst_slope = 0.0, worst_jump = 0.0;
    for (const ModelParams& base : {unit(), ModelParams{1.0, 1.7, 1.3, 0.8, 0.0, 0.0}}) {
        const double gc = critical_g1(base);
        auto psi3_sq = [&](double g1) {
            ModelParams p = base;
            p.g1 = g1;
            const auto s = classify(p);
            return s.psi3 * s.psi3;
        };
        auto phi_sq = [&](double g1) {
            ModelParams p = base;
            p.g1 = g1;
            const auto s = classify(p);
            return s.phi_a * s.phi_a;
        };
        const double h = 1e-7 * gc;
        const double slope = (psi3_sq(gc + h) - psi3_sq(gc)) / h;
        worst_slope = std::max(worst_slope, std::abs(slope - 1.0 / gc));
        worst_jump = std::max({worst_jump, psi3_sq(gc), std::abs(psi3_sq(gc + h) - psi3_sq(gc - h)),
                               phi_sq(gc), std::abs(phi_sq(gc + h) - phi_sq(gc - h))});
    }
    return {worst_slope <= 1e-4 && worst_jump <= 1e-5,
            fmt("max |slope - 1/g_c1| = %.2e", worst_slope) + fmt(", max jump at g_c1 = %.2e", worst_jump)};
}

// 6. Overlap area shrinks to zero as omega31 / omega21 -> 1.
Verdict overlap_monotone() {
    constexpr int res = 200;
    std::vector<double> areas;
    for (double ratio : {1.0, 1.2, 1.4, 1.7}) areas.push_back(overlap_area(unit(), ratio, res));
    bool ok = areas[0] <= 1.0 / (res * static_cast<double>(res)) && areas[3] > 0.0;
    for (std::size_t i = 1; i < areas.size(); ++i) ok = ok && areas[i - 1] <= areas[i];
    std::string d = "areas";
    for (double a : areas) d += fmt(" %.6f", a);
    return {ok, d + " at ratios 1.0 1.2 1.4 1.7"};
}

// 7. Finite-N exact diagonalization against the mean-field picture.
Verdict finite_n() {
    const double mf = 0.2256944444444;
    FiniteNSpec spec;
    spec.tol = 1e-4;
    spec.solve.compute_gap = false;

    std::vector<double> deviation;
    double pa10 = 0.0, pb10 = 0.0;
    for (int n : {4, 6, 8, 10}) {
        spec.n_atoms = n;
        const auto c = finite_n_point(unit(0.75, 0.75), spec);
        deviation.push_back(std::abs(c.result.photon_a - mf));
        if (n == 10) {
            pa10 = c.result.photon_a;
            pb10 = c.result.photon_b;
        }
    }
    const bool a_ok = std::abs(pa10 - pb10) <= 1e-6 && std::abs(pa10 - mf) <= 0.15 * mf && std::abs(pb10 - mf) <= 0.15 * mf;
    bool c_ok = true;
    for (std::size_t i = 1; i < deviation.size(); ++i) c_ok = c_ok && deviation[i] < deviation[i - 1];

    spec.n_atoms = 10;
    const auto sweep = line_cut(unit(), 0.75, 0.6, 0.9, 7, spec);
    bool b_ok = true;
    for (std::size_t i = 1; i < sweep.size(); ++i) {
        b_ok = b_ok && sweep[i].finite_n->photon_a > sweep[i - 1].finite_n->photon_a;
        b_ok = b_ok && sweep[i].finite_n->photon_b < sweep[i - 1].finite_n->photon_b;
    }
    std::string d = fmt("(a) N=10 photon_a %.6f", pa10) + fmt(" photon_b %.6f", pb10) + (a_ok ? " ok" : " FAIL")
                  + "; (b) g1 sweep " + (b_ok ? "monotone" : "NOT monotone") + "; (c) deviation N=4..10:";
    for (double x : deviation) d += fmt(" %.4f", x);
    return {a_ok && b_ok && c_ok, d};
}

// 8. Parity conservation, parity product and exchange symmetry.
Verdict symmetry() {
    std::mt19937_64 rng(808);
    std::uniform_real_distribution<double> w(0.2, 3.0), g(0.0, 2.0);
    std::uniform_int_distribution<int> nat(1, 4), cut(2, 8);
    double worst_comm = 0.0, worst_product = 0.0;
    for (int k = 0; k < 20; ++k) {
        const ModelParams p{w(rng), w(rng), w(rng), w(rng), g(rng), g(rng)};
        const auto space = make_space(nat(rng), cut(rng), cut(rng));
        worst_comm = std::max(worst_comm, parity_check(p, space).max());
        const auto par = parity_operators(space);
        worst_product = std::max(worst_product, (par.global - par.left.cwiseProduct(par.right)).cwiseAbs().maxCoeff());
    }
    double worst_swap = 0.0;
    std::uniform_real_distribution<double> gs(0.0, 1.2);
    for (int k = 0; k < 5; ++k) {
        const ModelParams p{w(rng), w(rng), w(rng), w(rng), gs(rng), gs(rng)};
        const int ca = 8 + k, cb = 12 - k;
        const auto a = solve_point(p, make_space(4, ca, cb));
        const auto b = solve_point(p.exchanged(), make_space(4, cb, ca));
        worst_swap = std::max({worst_swap, std::abs(a.photon_a - b.photon_b), std::abs(a.photon_b - b.photon_a),
                               std::abs(a.pop2 - b.pop3), std::abs(a.pop3 - b.pop2)});
    }
    return {worst_comm <= 1e-10 && worst_product == 0.0 && worst_swap <= 1e-9,
            fmt("max commutator %.1e", worst_comm) + fmt(", Pi_g - Pi_l Pi_r %.1e", worst_product)
                + fmt(", max exchange mismatch %.1e", worst_swap)};
}

// 9. Iterative ground energy vs dense diagonalization.
Verdict dense_oracle() {
    std::mt19937_64 rng(909);
    std::uniform_real_distribution<double> w(0.2, 3.0), g(0.0, 2.0);
    std::uniform_int_distribution<int> nat(1, 6), cut(1, 14);
    double worst = 0.0;
    int done = 0;
    while (done < 10) {
        const ModelParams p{w(rng), w(rng), w(rng), w(rng), g(rng), g(rng)};
        const int n = nat(rng), ca = cut(rng), cb = cut(rng);
        const TruncatedSpace space{SymmetricBasis(n), ca, cb};
        if (space.dimension() > 2000) continue;
        const auto h = build_hamiltonian(p, space);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h.to_dense(), Eigen::EigenvaluesOnly);
        worst = std::max(worst, std::abs(ground_state(h).energy - es.eigenvalues()(0)));
        ++done;
    }
    return {worst <= 1e-9, fmt("max |E_lanczos - E_dense| = %.2e over 10 instances", worst)};
}

} // namespace

int main() {
    struct Criterion {
        const char* name;
        std::function<Verdict()> run;
    };
    const std::vector<Criterion> criteria{
        {"1 oracle-equivalence", oracle_equivalence}, {"2 critical-points", critical_points},
        {"3 quadruple-point", quadruple_point},       {"4 first-order-jump", first_order_jump},
        {"5 second-order", second_order},             {"6 overlap-monotone", overlap_monotone},
        {"7 finite-n", finite_n},                     {"8 symmetry", symmetry},
        {"9 dense-oracle", dense_oracle},
    };
    int failures = 0;
    for (const auto& c : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Verdict v;
        try {
            v = c.run();
        } catch (const std::exception& e) {
            v = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("%s %-22s %s (%.1f s)\n", v.pass ? "PASS" : "FAIL", c.name, v.detail.c_str(), secs);
        std::fflush(stdout);
        failures += v.pass ? 0 : 1;
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
