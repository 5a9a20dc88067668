// io.hpp: locale-independent CSV and JSON serialization of results.
//
// Every floating-point value is written with 12 significant digits using
// std::to_chars, which ignores the global C/C++ locale.

#pragma once

#include <array>
#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "vdicke/errors.hpp"
#include "vdicke/exactdiag.hpp"
#include "vdicke/fluctuations.hpp"
#include "vdicke/meanfield.hpp"
#include "vdicke/scan.hpp"

namespace vdicke::io {

inline constexpr int kSignificantDigits = 12;

inline std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (v == 0.0) v = 0.0; // drop the sign of -0
    std::array<char, 64> buf{};
    auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::general,
                             kSignificantDigits);
    return std::string(buf.data(), res.ptr);
}

inline std::string format_int(long long v) {
    std::array<char, 32> buf{};
    auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), res.ptr);
}

/// v rounded to 12 significant digits, for JSON output.
inline double round_sig(double v) {
    if (!std::isfinite(v)) return v;
    const std::string s = format_double(v);
    double out = 0.0;
    std::from_chars(s.data(), s.data() + s.size(), out);
    return out;
}

inline double parse_double(std::string_view s) {
    if (s == "nan") return std::nan("");
    if (s == "inf") return INFINITY;
    if (s == "-inf") return -INFINITY;
    double out = 0.0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), out);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size())
        throw ConfigError("cannot parse number '" + std::string(s) + "'");
    return out;
}

inline int parse_int(std::string_view s) {
    int out = 0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), out);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size())
        throw ConfigError("cannot parse integer '" + std::string(s) + "'");
    return out;
}

inline bool parse_bool(std::string_view s) {
    if (s == "true" || s == "1") return true;
    if (s == "false" || s == "0") return false;
    throw ConfigError("cannot parse boolean '" + std::string(s) + "'");
}

inline constexpr std::string_view kRecordHeader = "g1,g2,phase,psi2,psi3,phi_a,phi_b,energy,bistable";
inline constexpr std::string_view kFiniteNHeader = ",N,photon_a,photon_b,cutoff_a,cutoff_b";

inline void write_records_csv(std::ostream& out, const std::vector<SweepRecord>& records) {
    const bool finite = !records.empty() && records.front().finite_n.has_value();
    out << kRecordHeader;
    if (finite) out << kFiniteNHeader;
    out << '\n';
    for (const auto& r : records) {
        out << format_double(r.g1) << ',' << format_double(r.g2) << ',' << to_string(r.phase) << ','
            << format_double(r.psi2) << ',' << format_double(r.psi3) << ',' << format_double(r.phi_a) << ','
            << format_double(r.phi_b) << ',' << format_double(r.energy) << ','
            << (r.bistable ? "true" : "false");
        if (finite) {
            if (!r.finite_n) throw ParameterError("write_records_csv: mixed finite-N and mean-field records");
            const auto& f = *r.finite_n;
            out << ',' << format_int(f.n_atoms) << ',' << format_double(f.photon_a) << ',' << format_double(f.photon_b)
                << ',' << format_int(f.cutoff_a) << ',' << format_int(f.cutoff_b);
        }
        out << '\n';
    }
}

namespace detail {

inline std::vector<std::string_view> split(std::string_view line, char sep = ',') {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (;;) {
        const auto pos = line.find(sep, start);
        out.push_back(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

} // namespace detail

/// Reads what write_records_csv produces.
inline std::vector<SweepRecord> read_records_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw ConfigError("read_records_csv: empty input");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    bool finite = false;
    if (line == std::string(kRecordHeader) + std::string(kFiniteNHeader)) finite = true;
    else if (line != kRecordHeader) throw ConfigError("read_records_csv: unexpected header '" + line + "'");

    std::vector<SweepRecord> out;
    const std::size_t columns = finite ? 14 : 9;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto f = detail::split(line);
        if (f.size() != columns) throw ConfigError("read_records_csv: wrong column count in '" + line + "'");
        SweepRecord r;
        r.g1 = parse_double(f[0]);
        r.g2 = parse_double(f[1]);
        r.phase = phase_from_string(f[2]);
        r.psi2 = parse_double(f[3]);
        r.psi3 = parse_double(f[4]);
        r.phi_a = parse_double(f[5]);
        r.phi_b = parse_double(f[6]);
        r.energy = parse_double(f[7]);
        r.bistable = parse_bool(f[8]);
        if (finite)
            r.finite_n = FiniteNFields{parse_int(f[9]), parse_double(f[10]), parse_double(f[11]),
                                       parse_int(f[12]), parse_int(f[13])};
        out.push_back(r);
    }
    return out;
}

using nlohmann::json;

inline json number(double v) {
    if (!std::isfinite(v)) return nullptr;
    return round_sig(v);
}

inline json to_json(const ModelParams& p) {
    return {{"omega21", number(p.omega21)}, {"omega31", number(p.omega31)}, {"omega_a", number(p.omega_a)},
            {"omega_b", number(p.omega_b)}, {"g1", number(p.g1)},           {"g2", number(p.g2)}};
}

inline json to_json(const MeanFieldSolution& s) {
    return {{"phase", std::string(to_string(s.phase))},
            {"psi1", number(s.psi1)},
            {"psi2", number(s.psi2)},
            {"psi3", number(s.psi3)},
            {"phi_a", number(s.phi_a)},
            {"phi_b", number(s.phi_b)},
            {"energy", number(s.energy)},
            {"bistable", s.bistable},
            {"degeneracy", s.degeneracy},
            {"valley", s.valley}};
}

inline std::string_view to_string(BranchKind k) {
    switch (k) {
    case BranchKind::Normal: return "normal";
    case BranchKind::Left: return "left";
    case BranchKind::Right: return "right";
    case BranchKind::Balanced: return "balanced";
    case BranchKind::Mixed: return "mixed";
    }
    return "?";
}

inline json to_json(const StationaryPoint& b) {
    json j = to_json(b.solution);
    j["branch"] = std::string(to_string(b.kind));
    j["physical"] = b.physical;
    return j;
}

inline json to_json(const QuadraticBosonForm& f) {
    return {{"freq1", number(f.freq1)}, {"freq2", number(f.freq2)}, {"coupling", number(f.coupling)}};
}

inline json to_json(const FluctuationSpectrum& s) {
    return {{"eps_minus", number(s.eps_minus)},
            {"eps_plus", number(s.eps_plus)},
            {"eps_minus_sq", number(s.eps_minus_sq)},
            {"stable", s.stable},
            {"symplectic_mismatch", number(s.symplectic_mismatch)}};
}

inline json to_json(const GroundStateResult& r) {
    return {{"N", r.n_atoms},
            {"cutoff_a", r.cutoff_a},
            {"cutoff_b", r.cutoff_b},
            {"energy", number(r.energy)},
            {"photon_a", number(r.photon_a)},
            {"photon_b", number(r.photon_b)},
            {"pop2", number(r.pop2)},
            {"pop3", number(r.pop3)},
            {"parity_l", number(r.parity_l)},
            {"parity_r", number(r.parity_r)},
            {"parity_g", number(r.parity_g)},
            {"gap", number(r.gap)},
            {"residual", number(r.residual)},
            {"edge_weight_a", number(r.edge_weight_a)},
            {"edge_weight_b", number(r.edge_weight_b)}};
}

inline json to_json(const CutoffConvergence& c) {
    json trace = json::array();
    for (const auto& t : c.trace) {
        trace.push_back({{"cutoff_a", t.cutoff_a},
                         {"cutoff_b", t.cutoff_b},
                         {"dimension", t.dimension},
                         {"photon_a", number(t.result.photon_a)},
                         {"photon_b", number(t.result.photon_b)},
                         {"energy", number(t.result.energy)}});
    }
    return {{"result", to_json(c.result)}, {"trace", trace}};
}

inline json to_json(const SweepRecord& r) {
    json j = {{"g1", number(r.g1)},         {"g2", number(r.g2)},         {"phase", std::string(to_string(r.phase))},
              {"psi2", number(r.psi2)},     {"psi3", number(r.psi3)},     {"phi_a", number(r.phi_a)},
              {"phi_b", number(r.phi_b)},   {"energy", number(r.energy)}, {"bistable", r.bistable},
              {"valley", r.valley}};
    if (r.finite_n) {
        j["N"] = r.finite_n->n_atoms;
        j["photon_a"] = number(r.finite_n->photon_a);
        j["photon_b"] = number(r.finite_n->photon_b);
        j["cutoff_a"] = r.finite_n->cutoff_a;
        j["cutoff_b"] = r.finite_n->cutoff_b;
    }
    return j;
}

inline json to_json(const std::vector<SweepRecord>& records) {
    json arr = json::array();
    for (const auto& r : records) arr.push_back(to_json(r));
    return arr;
}

} // namespace vdicke::io
