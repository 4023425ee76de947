#include "lingam/ica_baseline.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "lingam/assignment.hpp"
#include "lingam/rng.hpp"

namespace lingam {

namespace {

constexpr double kCovarianceRcond = 1e-12;

void orthogonalize(Vector& w, const Matrix& basis, Eigen::Index rows) {
    for (Eigen::Index k = 0; k < rows; ++k) {
        const auto bk = basis.row(k).transpose();
        w -= w.dot(bk) * bk;
    }
}

Vector random_direction(Rng& rng, Eigen::Index p, const Matrix& basis, Eigen::Index rows) {
    std::normal_distribution<double> normal(0.0, 1.0);
    Vector w(p);
    for (Eigen::Index i = 0; i < p; ++i) w(i) = normal(rng);
    orthogonalize(w, basis, rows);
    return w / w.norm();
}

}  // namespace

Whitening whiten(const Dataset& data) {
    const auto p = static_cast<Eigen::Index>(data.p());
    const auto n = static_cast<Eigen::Index>(data.n());
    if (p > n) {
        throw Error(ErrorCode::RankDeficient, "ICA needs p <= n, got p = " + std::to_string(p) +
                                                  ", n = " + std::to_string(n));
    }
    const DataMatrix& x = data.values();
    const Matrix cov = (x * x.transpose()) / static_cast<double>(n);
    const Eigen::SelfAdjointEigenSolver<Matrix> eig(cov);
    const Vector& values = eig.eigenvalues();
    if (!(values.maxCoeff() > 0.0) || values.minCoeff() <= kCovarianceRcond * values.maxCoeff()) {
        throw Error(ErrorCode::RankDeficient, "sample covariance is singular");
    }
    Whitening out;
    out.transform = values.cwiseSqrt().cwiseInverse().asDiagonal() * eig.eigenvectors().transpose();
    out.whitened = out.transform * x;
    return out;
}

FastIcaResult fastica(const Dataset& data, const FastIcaConfig& cfg) {
    if (cfg.max_iterations < 1) throw Error(ErrorCode::InvalidArgument, "max_iterations must be >= 1");
    if (!(cfg.tolerance > 0.0)) throw Error(ErrorCode::InvalidArgument, "tolerance must be > 0");

    const Whitening white = whiten(data);
    const DataMatrix& z = white.whitened;
    const auto p = z.rows();
    const auto n = static_cast<double>(z.cols());

    Rng rng(cfg.seed);
    Matrix components = Matrix::Zero(p, p);
    FastIcaResult out;

    for (Eigen::Index c = 0; c < p; ++c) {
        Vector w;
        bool converged = false;
        for (std::size_t attempt = 0; attempt <= cfg.restarts && !converged; ++attempt) {
            w = random_direction(rng, p, components, c);
            for (std::size_t it = 0; it < cfg.max_iterations; ++it) {
                const Vector projection = z.transpose() * w;
                const Vector g = projection.array().tanh().matrix();
                const double mean_derivative = (1.0 - g.array().square()).mean();
                Vector updated = (z * g) / n - mean_derivative * w;
                orthogonalize(updated, components, c);
                updated /= updated.norm();
                const double change = std::abs(1.0 - std::abs(updated.dot(w)));
                w = std::move(updated);
                if (change < cfg.tolerance) {
                    converged = true;
                    break;
                }
            }
        }
        out.converged = out.converged && converged;
        components.row(c) = w.transpose();
    }

    out.unmixing = components * white.transform;
    return out;
}

DiagonalPermutation diagonal_permutation(const Matrix& w) {
    if (w.rows() != w.cols()) throw Error(ErrorCode::DimensionError, "unmixing matrix must be square");
    const auto p = w.rows();
    Matrix cost(p, p);
    for (Eigen::Index r = 0; r < p; ++r) {
        for (Eigen::Index i = 0; i < p; ++i) {
            const double a = std::abs(w(r, i));
            cost(r, i) = a == 0.0 ? std::numeric_limits<double>::infinity() : 1.0 / a;
        }
    }
    const auto slot_of_row = solve_assignment(cost);
    if (!slot_of_row) {
        throw Error(ErrorCode::NoFeasibleAssignment, "every row permutation leaves a zero on the diagonal");
    }

    DiagonalPermutation out;
    out.row_for_slot.resize(static_cast<std::size_t>(p));
    out.permuted.resize(p, p);
    for (Eigen::Index r = 0; r < p; ++r) {
        const auto slot = (*slot_of_row)[static_cast<std::size_t>(r)];
        out.row_for_slot[slot] = static_cast<std::size_t>(r);
        out.permuted.row(static_cast<Eigen::Index>(slot)) = w.row(r);
    }
    for (Eigen::Index i = 0; i < p; ++i) out.cost += 1.0 / std::abs(out.permuted(i, i));
    return out;
}

ConnectionMatrix b_from_unmixing(const Matrix& w) {
    if (w.rows() != w.cols()) throw Error(ErrorCode::DimensionError, "unmixing matrix must be square");
    const auto p = w.rows();
    Matrix b = Matrix::Zero(p, p);
    for (Eigen::Index i = 0; i < p; ++i) {
        const double d = w(i, i);
        if (d == 0.0) throw Error(ErrorCode::ZeroDiagonal, "row " + std::to_string(i + 1) + " has a zero diagonal");
        for (Eigen::Index j = 0; j < p; ++j) {
            if (j != i) b(i, j) = -w(i, j) / d;
        }
    }
    return ConnectionMatrix(std::move(b));
}

PruneResult prune_and_order(const ConnectionMatrix& b) {
    const std::size_t p = b.size();
    std::vector<std::size_t> cells(p * p);
    std::iota(cells.begin(), cells.end(), 0);
    // Cell index r * p + c makes the stable tie order (row, column).
    std::stable_sort(cells.begin(), cells.end(), [&](std::size_t a, std::size_t c) {
        return std::abs(b(a / p, a % p)) < std::abs(b(c / p, c % p));
    });

    PruneResult out;
    out.pruned = b;
    std::size_t next = std::min(p * (p + 1) / 2, cells.size());
    for (std::size_t k = 0; k < next; ++k) out.pruned(cells[k] / p, cells[k] % p) = 0.0;

    while (true) {
        ++out.tests;
        if (auto order = find_strict_lower_permutation(out.pruned)) {
            out.order = std::move(*order);
            return out;
        }
        // The all-zero matrix is always permutable, so cells cannot run out here.
        out.pruned(cells[next] / p, cells[next] % p) = 0.0;
        ++next;
    }
}

BaselineModel ica_lingam_fit(const Dataset& data, const FastIcaConfig& cfg) {
    const FastIcaResult ica = fastica(data, cfg);
    const DiagonalPermutation permutation = diagonal_permutation(ica.unmixing);
    ConnectionMatrix strengths = b_from_unmixing(permutation.permuted);
    PruneResult pruned = prune_and_order(strengths);
    return BaselineModel{std::move(pruned.order), std::move(strengths), std::move(pruned.pruned), ica.converged};
}

}  // namespace lingam
