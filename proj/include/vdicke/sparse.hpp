// sparse.hpp: real sparse operators and a thick-restart Lanczos solver for
// the lowest eigenpairs of a symmetric matrix.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "vdicke/errors.hpp"

namespace vdicke {

struct SparseEntry {
    std::int64_t row;
    std::int64_t col;
    double value;
};

/// Real square sparse matrix in compressed row storage. Duplicate entries
/// are summed on construction.
class SparseOperator {
public:
    using Storage = Eigen::SparseMatrix<double, Eigen::RowMajor, std::int64_t>;

    SparseOperator() = default;

    SparseOperator(std::int64_t dimension, const std::vector<SparseEntry>& entries)
        : m_(dimension, dimension) {
        std::vector<Eigen::Triplet<double, std::int64_t>> t;
        t.reserve(entries.size());
        for (const auto& e : entries) t.emplace_back(e.row, e.col, e.value);
        m_.setFromTriplets(t.begin(), t.end());
        m_.makeCompressed();
    }

    explicit SparseOperator(Storage m) : m_(std::move(m)) { m_.makeCompressed(); }

    std::int64_t dimension() const { return m_.rows(); }
    std::int64_t nonzeros() const { return m_.nonZeros(); }
    const Storage& storage() const { return m_; }

    /// Entries in row-major order.
    std::vector<SparseEntry> entries() const {
        std::vector<SparseEntry> out;
        out.reserve(static_cast<std::size_t>(m_.nonZeros()));
        for (std::int64_t r = 0; r < m_.outerSize(); ++r)
            for (Storage::InnerIterator it(m_, r); it; ++it)
                out.push_back({r, it.col(), it.value()});
        return out;
    }

    double coeff(std::int64_t row, std::int64_t col) const { return m_.coeff(row, col); }

    Eigen::VectorXd apply(const Eigen::Ref<const Eigen::VectorXd>& v) const { return m_ * v; }

    /// max |A_ij - A_ji|.
    double hermiticity_defect() const {
        Storage t = m_.transpose();
        Storage d = m_ - t;
        double worst = 0.0;
        for (std::int64_t k = 0; k < d.nonZeros(); ++k) worst = std::max(worst, std::abs(d.valuePtr()[k]));
        return worst;
    }

    /// Maximum absolute row sum; an upper bound on the spectral radius.
    double norm_inf() const {
        double worst = 0.0;
        for (std::int64_t r = 0; r < m_.outerSize(); ++r) {
            double s = 0.0;
            for (Storage::InnerIterator it(m_, r); it; ++it) s += std::abs(it.value());
            worst = std::max(worst, s);
        }
        return worst;
    }

    Eigen::MatrixXd to_dense() const { return Eigen::MatrixXd(m_); }

private:
    Storage m_;
};

struct LanczosOptions {
    double tol{1e-12};        // residual bound relative to norm_inf(H)
    int krylov_dim{30};       // basis size per cycle
    int keep{10};             // Ritz vectors retained on restart
    int max_restarts{500};
    int nev{1};               // eigenpairs that must meet the tolerance
    std::uint64_t seed{12345};
};

struct EigenResult {
    std::vector<double> energies;       // ascending, size nev
    std::vector<Eigen::VectorXd> vectors;
    double residual{0.0};               // worst absolute residual among the nev pairs
    int restarts{0};
    std::int64_t matvecs{0};
};

/// Deterministic start vector: uniform entries in [-1, 1) from mt19937_64.
inline Eigen::VectorXd seeded_start_vector(std::int64_t dimension, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    Eigen::VectorXd v(dimension);
    for (std::int64_t i = 0; i < dimension; ++i) v(i) = dist(rng);
    return v.normalized();
}

/// Lowest `opts.nev` eigenpairs of a symmetric operator by thick-restart
/// Lanczos with full reorthogonalization.
///
/// Each cycle extends the basis to krylov_dim vectors, solves the projected
/// problem, and restarts from the `keep` lowest Ritz vectors plus the current
/// residual direction. Converged when every requested Ritz pair has
/// ||H y - theta y|| <= tol * norm_inf(H). Throws ConvergenceError otherwise.
/// Single-threaded, so results are bitwise reproducible for a fixed seed.
inline EigenResult lowest_eigenpairs(const SparseOperator& h, const LanczosOptions& opts = {}) {
    const std::int64_t n = h.dimension();
    if (n <= 0) throw ParameterError("lowest_eigenpairs: empty operator");
    const int nev = std::max(1, static_cast<int>(std::min<std::int64_t>(opts.nev, n)));
    const int m = static_cast<int>(std::min<std::int64_t>(std::max(opts.krylov_dim, nev + 2), n));
    const int keep = std::clamp(opts.keep, nev, std::max(nev, m - 1));
    const double scale = std::max(h.norm_inf(), 1e-300);
    const double target = opts.tol * scale;

    // Column j of `basis` is the j-th Lanczos vector.
    Eigen::MatrixXd basis(n, m);
    basis.col(0) = seeded_start_vector(n, opts.seed);
    Eigen::MatrixXd proj = Eigen::MatrixXd::Zero(m, m);

    EigenResult result;
    double best_residual = std::numeric_limits<double>::infinity();
    int start = 0;

    for (int cycle = 0; cycle <= opts.max_restarts; ++cycle) {
        Eigen::VectorXd w;
        double beta = 0.0;
        int size = m;
        for (int j = start; j < m; ++j) {
            w = h.apply(basis.col(j));
            ++result.matvecs;
            // Classical Gram-Schmidt applied twice; the first pass gives the
            // projected matrix column.
            const auto q = basis.leftCols(j + 1);
            Eigen::VectorXd c = q.transpose() * w;
            w.noalias() -= q * c;
            const Eigen::VectorXd c2 = q.transpose() * w;
            w.noalias() -= q * c2;
            c += c2;
            proj.col(j).head(j + 1) = c;
            proj.row(j).head(j + 1) = c.transpose();
            beta = w.norm();
            if (beta <= 1e-14 * scale) {
                // Invariant subspace: the projected problem is exact.
                size = j + 1;
                beta = 0.0;
                break;
            }
            if (j + 1 < m) basis.col(j + 1) = w / beta;
        }

        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> small(proj.topLeftCorner(size, size));
        const Eigen::VectorXd& theta = small.eigenvalues();
        const Eigen::MatrixXd& s = small.eigenvectors();
        const int found = std::min(nev, size);

        double worst = 0.0;
        for (int k = 0; k < found; ++k) worst = std::max(worst, std::abs(beta * s(size - 1, k)));
        best_residual = std::min(best_residual, worst);

        if (worst <= target && found == nev) {
            result.restarts = cycle;
            for (int k = 0; k < nev; ++k) {
                Eigen::VectorXd y = basis.leftCols(size) * s.col(k);
                y.normalize();
                const double r = (h.apply(y) - theta(k) * y).norm();
                ++result.matvecs;
                result.residual = std::max(result.residual, r);
                result.energies.push_back(theta(k));
                result.vectors.push_back(std::move(y));
            }
            if (result.residual <= 10.0 * target + 1e-13 * scale) return result;
            // Loss of orthogonality: fall through and restart from the Ritz vectors.
            result.energies.clear();
            result.vectors.clear();
            result.residual = 0.0;
        }
        if (size < m && beta == 0.0 && found < nev)
            throw ConvergenceError("lowest_eigenpairs: start vector spans fewer than nev eigenvectors",
                                   best_residual);

        // Thick restart from the `keep` lowest Ritz vectors and the residual direction.
        const int k_keep = std::min(keep, size - 1);
        const Eigen::MatrixXd ritz = basis.leftCols(size) * s.leftCols(k_keep);
        basis.leftCols(k_keep) = ritz;
        proj.setZero();
        for (int k = 0; k < k_keep; ++k) proj(k, k) = theta(k);
        if (beta > 0.0) {
            basis.col(k_keep) = w / beta;
        } else {
            // Exhausted subspace without convergence; perturb with a fresh direction.
            Eigen::VectorXd r = seeded_start_vector(n, opts.seed + static_cast<std::uint64_t>(cycle) + 1);
            const auto q = basis.leftCols(k_keep);
            for (int pass = 0; pass < 2; ++pass) r.noalias() -= q * (q.transpose() * r).eval();
            basis.col(k_keep) = r.normalized();
        }
        start = k_keep;
    }
    throw ConvergenceError("lowest_eigenpairs: no convergence within max_restarts", best_residual);
}

} // namespace vdicke
