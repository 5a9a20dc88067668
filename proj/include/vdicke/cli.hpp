// cli.hpp: command-line front end. tools/vdicke_cli.cpp only forwards to run().
//
// Exit codes: 0 success, 2 configuration or usage error, 3 numerical failure
// (non-convergence, capacity limit, failed bracket).

#pragma once

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "vdicke/errors.hpp"
#include "vdicke/exactdiag.hpp"
#include "vdicke/fluctuations.hpp"
#include "vdicke/io.hpp"
#include "vdicke/meanfield.hpp"
#include "vdicke/model.hpp"
#include "vdicke/scan.hpp"

namespace vdicke::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumerical = 3;

namespace detail {

struct FiniteNOptions {
    int n_atoms{10};
    double tol{1e-4};
    std::optional<int> cutoff_a;
    std::optional<int> cutoff_b;
    std::int64_t max_dimension{kDefaultMaxDimension};
};

struct Settings {
    ModelParams params{};
    std::uint64_t seed{12345};
    unsigned jobs{1};
    std::string output;
    std::string format;

    // phase-diagram, line-cut and ed sweeps
    std::optional<double> g1_min, g1_max, g2_min, g2_max;
    int n1{100};
    int n2{100};
    int steps{41};

    // boundary
    std::string kind{"gtilde_c2"};
    double from{0.0};
    double to{1.0};

    // overlap-area
    std::vector<double> ratios{1.0, 1.2, 1.4, 1.7};
    int resolution{200};

    FiniteNOptions fn{};
    bool finite_n{false};
    bool fixed_cutoffs{false};
    bool sweep{false};
};

inline void add_model_options(CLI::App& app, Settings& s) {
    auto nonneg = CLI::NonNegativeNumber;
    app.add_option("--omega21", s.params.omega21, "Level-2 splitting (energy unit)")->capture_default_str();
    app.add_option("--omega31", s.params.omega31, "Level-3 splitting")->capture_default_str();
    app.add_option("--omega-a", s.params.omega_a, "Mode a frequency")->capture_default_str();
    app.add_option("--omega-b", s.params.omega_b, "Mode b frequency")->capture_default_str();
    app.add_option("--g1", s.params.g1, "Coupling of the 1-3 transition to mode a")->check(nonneg)->capture_default_str();
    app.add_option("--g2", s.params.g2, "Coupling of the 1-2 transition to mode b")->check(nonneg)->capture_default_str();
}

inline void add_finite_n_options(CLI::App& sub, Settings& s) {
    sub.add_option("--n-atoms", s.fn.n_atoms, "Number of atoms N")->check(CLI::Range(1, 1000))->capture_default_str();
    sub.add_option("--tol", s.fn.tol, "Cutoff convergence tolerance on photon numbers / N")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sub.add_option("--cutoff-a", s.fn.cutoff_a, "Starting photon cutoff for mode a (default from mean field)")
        ->check(CLI::PositiveNumber);
    sub.add_option("--cutoff-b", s.fn.cutoff_b, "Starting photon cutoff for mode b (default from mean field)")
        ->check(CLI::PositiveNumber);
    sub.add_option("--max-dimension", s.fn.max_dimension, "Largest Hilbert-space dimension allowed")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
}

inline void add_g1_range(CLI::App& sub, Settings& s) {
    sub.add_option("--g1-min", s.g1_min, "Lower g1 (default 0)")->check(CLI::NonNegativeNumber);
    sub.add_option("--g1-max", s.g1_max, "Upper g1 (default 2 g_c1)")->check(CLI::NonNegativeNumber);
    sub.add_option("--steps", s.steps, "Number of g1 samples")->check(CLI::Range(1, 1000000))->capture_default_str();
}

inline std::string format_for(const Settings& s, const char* fallback) {
    return s.format.empty() ? std::string(fallback) : s.format;
}

inline void emit_json(std::ostream& out, const nlohmann::json& j) { out << j.dump(2) << '\n'; }

inline void emit_records(std::ostream& out, const Settings& s, const std::vector<SweepRecord>& recs) {
    if (format_for(s, "csv") == "csv") io::write_records_csv(out, recs);
    else emit_json(out, io::to_json(recs));
}

inline void require_json(const Settings& s, const std::string& command) {
    if (format_for(s, "json") != "json") throw ConfigError(command + ": only json output is available");
}

inline nlohmann::json optional_number(const std::optional<double>& v) {
    return v ? io::number(*v) : nlohmann::json(nullptr);
}

inline nlohmann::json run_critical(const ModelParams& p) {
    p.validate();
    std::optional<double> gt1, gt2, mul, mur;
    if (p.g2 >= critical_g2(p)) gt1 = renormalized_critical_g1(p);
    if (p.g1 >= critical_g1(p)) gt2 = renormalized_critical_g2(p);
    if (p.g1 > 0.0) mul = mu_left(p);
    if (p.g2 > 0.0) mur = mu_right(p);
    const auto [alpha, beta] = coupling_strengths(p);
    return {{"params", io::to_json(p)},
            {"g_c1", io::number(critical_g1(p))},
            {"g_c2", io::number(critical_g2(p))},
            {"gtilde_c1", optional_number(gt1)},
            {"gtilde_c2", optional_number(gt2)},
            {"mu_left", optional_number(mul)},
            {"mu_right", optional_number(mur)},
            {"alpha", io::number(alpha)},
            {"beta", io::number(beta)},
            {"balanced", is_balanced(p)}};
}

inline nlohmann::json run_meanfield(const ModelParams& p) {
    nlohmann::json branches = nlohmann::json::array();
    for (const auto& b : stationary_branches(p)) branches.push_back(io::to_json(b));
    return {{"params", io::to_json(p)}, {"solution", io::to_json(classify(p))}, {"branches", branches}};
}

inline nlohmann::json form_and_spectrum(const QuadraticBosonForm& f) {
    return {{"form", io::to_json(f)}, {"spectrum", io::to_json(diagonalize(f))}};
}

inline nlohmann::json run_spectrum(const ModelParams& p) {
    p.validate();
    const auto normal = normal_phase_forms(p);
    nlohmann::json j = {{"params", io::to_json(p)},
                        {"normal_left", form_and_spectrum(normal.left)},
                        {"normal_right", form_and_spectrum(normal.right)},
                        {"left_branch", nullptr},
                        {"right_branch", nullptr}};
    if (p.g2 >= critical_g2(p)) j["left_branch"] = form_and_spectrum(left_branch_form(p));
    if (p.g1 >= critical_g1(p)) j["right_branch"] = form_and_spectrum(right_branch_form(p));
    return j;
}

inline GridSpec grid_from(const Settings& s) {
    s.params.validate();
    GridSpec g;
    g.base = s.params;
    g.g1_min = s.g1_min.value_or(0.0);
    g.g1_max = s.g1_max.value_or(2.0 * critical_g1(s.params));
    g.g2_min = s.g2_min.value_or(0.0);
    g.g2_max = s.g2_max.value_or(2.0 * critical_g2(s.params));
    g.n1 = s.n1;
    g.n2 = s.n2;
    return g;
}

inline SolveOptions solve_options(const Settings& s) {
    SolveOptions so;
    so.lanczos.seed = s.seed;
    so.max_dimension = s.fn.max_dimension;
    return so;
}

inline FiniteNSpec finite_n_spec(const Settings& s) {
    FiniteNSpec spec;
    spec.n_atoms = s.fn.n_atoms;
    spec.tol = s.fn.tol;
    spec.cutoff_a = s.fn.cutoff_a;
    spec.cutoff_b = s.fn.cutoff_b;
    spec.solve = solve_options(s);
    return spec;
}

inline std::vector<SweepRecord> run_line_cut(const Settings& s, bool with_finite_n) {
    s.params.validate();
    const double lo = s.g1_min.value_or(0.0);
    const double hi = s.g1_max.value_or(2.0 * critical_g1(s.params));
    std::optional<FiniteNSpec> spec;
    if (with_finite_n) spec = finite_n_spec(s);
    return line_cut(s.params, s.params.g2, lo, hi, s.steps, spec, s.jobs);
}

inline nlohmann::json run_ed_point(const Settings& s) {
    const ModelParams& p = s.params;
    p.validate();
    const auto [da, db] = default_cutoffs(p, s.fn.n_atoms);
    const int ca = s.fn.cutoff_a.value_or(da), cb = s.fn.cutoff_b.value_or(db);
    const SolveOptions so = solve_options(s);
    nlohmann::json j = {{"params", io::to_json(p)}, {"meanfield", io::to_json(classify(p))}};
    if (s.fixed_cutoffs) {
        const TruncatedSpace space = make_space(s.fn.n_atoms, ca, cb, so.max_dimension);
        j["result"] = io::to_json(solve_point(p, space, so));
        j["trace"] = nlohmann::json::array();
    } else {
        const auto c = converge_cutoffs(p, s.fn.n_atoms, ca, cb, s.fn.tol, so);
        const auto conv = io::to_json(c);
        j["result"] = conv.at("result");
        j["trace"] = conv.at("trace");
    }
    return j;
}

inline nlohmann::json run_parity(const Settings& s) {
    s.params.validate();
    const int ca = s.fn.cutoff_a.value_or(4), cb = s.fn.cutoff_b.value_or(4);
    const auto check = parity_check(s.params, make_space(s.fn.n_atoms, ca, cb, s.fn.max_dimension));
    return {{"params", io::to_json(s.params)},
            {"N", s.fn.n_atoms},
            {"cutoff_a", ca},
            {"cutoff_b", cb},
            {"left", check.left},
            {"right", check.right},
            {"global", check.global},
            {"max", check.max()}};
}

} // namespace detail

/// Parses argv, runs one subcommand and writes its result to `out` (or the
/// --output file). Diagnostics go to `err`.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    using detail::Settings;
    Settings s;

    CLI::App app{"Mean-field, fluctuation and finite-N analysis of the two-mode V-type Dicke model"};
    app.set_config("--config", "", "INI file; top-level keys set global options, [subcommand] sections set that "
                                   "subcommand's options. Command-line flags take precedence.");
    app.allow_config_extras(CLI::config_extras_mode::error);
    app.fallthrough();
    app.require_subcommand(1, 1);
    detail::add_model_options(app, s);
    app.add_option("--seed", s.seed, "Eigensolver start-vector seed")->capture_default_str();
    app.add_option("--jobs", s.jobs, "Worker threads for sweeps")->check(CLI::Range(1u, 1024u))->capture_default_str();
    app.add_option("--output,-o", s.output, "Write the result to this file instead of stdout");
    app.add_option("--format", s.format, "Output format: csv or json (sweeps default to csv, points to json)")
        ->check(CLI::IsMember({"csv", "json"}));

    auto* critical = app.add_subcommand("critical", "Bare and renormalized critical couplings");
    auto* meanfield = app.add_subcommand("meanfield", "Mean-field ground state and all stationary branches");
    auto* spectrum = app.add_subcommand("spectrum", "Fluctuation eigenfrequencies of every available phase");

    auto* pd = app.add_subcommand("phase-diagram", "Mean-field phase labels on a (g1, g2) grid");
    pd->add_option("--g1-min", s.g1_min, "Lower g1 (default 0)")->check(CLI::NonNegativeNumber);
    pd->add_option("--g1-max", s.g1_max, "Upper g1 (default 2 g_c1)")->check(CLI::NonNegativeNumber);
    pd->add_option("--g2-min", s.g2_min, "Lower g2 (default 0)")->check(CLI::NonNegativeNumber);
    pd->add_option("--g2-max", s.g2_max, "Upper g2 (default 2 g_c2)")->check(CLI::NonNegativeNumber);
    pd->add_option("--n1", s.n1, "Samples along g1")->check(CLI::Range(2, 100000))->capture_default_str();
    pd->add_option("--n2", s.n2, "Samples along g2")->check(CLI::Range(2, 100000))->capture_default_str();

    auto* boundary = app.add_subcommand("boundary", "Trace a phase boundary by closed form and zero mode");
    boundary->add_option("--kind", s.kind, "gtilde_c1, gtilde_c2, normal_left or normal_right")
        ->check(CLI::IsMember({"gtilde_c1", "gtilde_c2", "normal_left", "normal_right"}))
        ->capture_default_str();
    boundary->add_option("--from", s.from, "First abscissa (g2 for *_c1/normal_left, g1 otherwise)")
        ->capture_default_str();
    boundary->add_option("--to", s.to, "Last abscissa")->capture_default_str();
    boundary->add_option("--steps", s.steps, "Number of samples")->check(CLI::Range(1, 1000000))->capture_default_str();

    auto* cut = app.add_subcommand("line-cut", "Order parameters along g1 at the given g2");
    detail::add_g1_range(*cut, s);
    cut->add_flag("--finite-n", s.finite_n, "Also compute finite-N observables at each step");
    detail::add_finite_n_options(*cut, s);

    auto* overlap = app.add_subcommand("overlap-area", "Bistable fraction of [g_c1, 2g_c1] x [g_c2, 2g_c2]");
    overlap->add_option("--ratios", s.ratios, "omega31 / omega21 values")->check(CLI::Range(1.0, 1e6))->capture_default_str();
    overlap->add_option("--resolution", s.resolution, "Cells per axis")->check(CLI::Range(1, 100000))->capture_default_str();

    auto* ed = app.add_subcommand("ed", "Finite-N exact diagonalization at a point or along g1");
    detail::add_finite_n_options(*ed, s);
    ed->add_flag("--fixed-cutoffs", s.fixed_cutoffs, "Use the starting cutoffs without convergence doubling");
    ed->add_flag("--sweep", s.sweep, "Sweep g1 over [--g1-min, --g1-max] at the given g2");
    detail::add_g1_range(*ed, s);

    auto* parity = app.add_subcommand("parity-check", "Commutator norms of H with the parity operators");
    parity->add_option("--n-atoms", s.fn.n_atoms, "Number of atoms N")->check(CLI::Range(1, 1000))->capture_default_str();
    parity->add_option("--cutoff-a", s.fn.cutoff_a, "Photon cutoff for mode a (default 4)")->check(CLI::PositiveNumber);
    parity->add_option("--cutoff-b", s.fn.cutoff_b, "Photon cutoff for mode b (default 4)")->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kExitConfig;
    }

    std::ofstream file;
    std::ostream* sink = &out;
    if (!s.output.empty()) {
        file.open(s.output);
        if (!file) {
            err << "error: cannot open output file '" << s.output << "'\n";
            return kExitConfig;
        }
        sink = &file;
    }

    try {
        if (critical->parsed()) {
            detail::require_json(s, "critical");
            detail::emit_json(*sink, detail::run_critical(s.params));
        } else if (meanfield->parsed()) {
            detail::require_json(s, "meanfield");
            detail::emit_json(*sink, detail::run_meanfield(s.params));
        } else if (spectrum->parsed()) {
            detail::require_json(s, "spectrum");
            detail::emit_json(*sink, detail::run_spectrum(s.params));
        } else if (pd->parsed()) {
            detail::emit_records(*sink, s, phase_diagram(detail::grid_from(s), s.jobs));
        } else if (boundary->parsed()) {
            const auto pts = trace_boundary(s.params, boundary_from_string(s.kind), s.from, s.to, s.steps);
            if (detail::format_for(s, "csv") == "csv") {
                *sink << "abscissa,ordinate,zero_mode\n";
                for (const auto& p : pts)
                    *sink << io::format_double(p.abscissa) << ',' << io::format_double(p.ordinate) << ','
                          << io::format_double(p.zero_mode) << '\n';
            } else {
                nlohmann::json arr = nlohmann::json::array();
                for (const auto& p : pts)
                    arr.push_back({{"abscissa", io::number(p.abscissa)},
                                   {"ordinate", io::number(p.ordinate)},
                                   {"zero_mode", io::number(p.zero_mode)}});
                detail::emit_json(*sink, {{"kind", s.kind}, {"points", arr}});
            }
        } else if (cut->parsed()) {
            detail::emit_records(*sink, s, detail::run_line_cut(s, s.finite_n));
        } else if (overlap->parsed()) {
            std::vector<double> areas;
            for (double r : s.ratios) areas.push_back(overlap_area(s.params, r, s.resolution, s.jobs));
            if (detail::format_for(s, "csv") == "csv") {
                *sink << "ratio,area\n";
                for (std::size_t i = 0; i < areas.size(); ++i)
                    *sink << io::format_double(s.ratios[i]) << ',' << io::format_double(areas[i]) << '\n';
            } else {
                nlohmann::json arr = nlohmann::json::array();
                for (std::size_t i = 0; i < areas.size(); ++i)
                    arr.push_back({{"ratio", io::number(s.ratios[i])}, {"area", io::number(areas[i])}});
                detail::emit_json(*sink, {{"resolution", s.resolution}, {"areas", arr}});
            }
        } else if (ed->parsed()) {
            if (s.sweep) {
                if (s.fixed_cutoffs) throw ConfigError("ed: --sweep always converges cutoffs; drop --fixed-cutoffs");
                detail::emit_records(*sink, s, detail::run_line_cut(s, true));
            } else {
                detail::require_json(s, "ed");
                detail::emit_json(*sink, detail::run_ed_point(s));
            }
        } else if (parity->parsed()) {
            detail::require_json(s, "parity-check");
            detail::emit_json(*sink, detail::run_parity(s));
        }
    } catch (const ConvergenceError& e) {
        err << "error: " << e.what() << " (best residual " << io::format_double(e.best_residual()) << ")\n";
        return kExitNumerical;
    } catch (const CapacityError& e) {
        err << "error: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const BracketError& e) {
        err << "error: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << '\n';
        return kExitConfig;
    }
    sink->flush();
    return kExitOk;
}

} // namespace vdicke::cli
