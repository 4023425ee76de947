#include "lingam/direct_lingam.hpp"

#include <cmath>
#include <numeric>

namespace lingam {

namespace {

std::span<double> mutable_row(DataMatrix& rows, Eigen::Index i) {
    return {rows.data() + i * rows.cols(), static_cast<std::size_t>(rows.cols())};
}

std::span<const double> const_row(const DataMatrix& rows, Eigen::Index i) {
    return {rows.data() + i * rows.cols(), static_cast<std::size_t>(rows.cols())};
}

void require_centered(const Dataset& data) {
    if (!data.centered()) throw Error(ErrorCode::InvalidArgument, "dataset must be centered");
}

}  // namespace

OrderEstimate estimate_order(const Dataset& data, const IndependenceConfig& cfg, unsigned threads) {
    require_centered(data);
    const std::size_t p = data.p();
    const std::size_t n = data.n();

    DataMatrix work = data.values();
    std::vector<std::size_t> subscripts(p);
    std::iota(subscripts.begin(), subscripts.end(), 0);
    std::vector<double> original_sd(p);
    for (std::size_t v = 0; v < p; ++v) original_sd[v] = std::sqrt(variance(data.row(v)));

    std::vector<std::size_t> order;
    order.reserve(p);
    OrderEstimate out;
    out.diagnostics.reserve(p > 0 ? p - 1 : 0);
    bool rank_exhausted = false;

    for (std::size_t step = 0; step + 1 < p; ++step) {
        const auto q = static_cast<Eigen::Index>(work.rows());
        StepDiagnostics diag;
        Eigen::Index picked = 0;
        if (rank_exhausted) {
            for (std::size_t s : subscripts) diag.emplace(s, 0.0);
        } else {
            std::vector<std::size_t> active(static_cast<std::size_t>(q));
            std::iota(active.begin(), active.end(), 0);
            const auto scores = score_candidates(active, work, cfg, threads);
            for (std::size_t c = 0; c < scores.candidates.size(); ++c) {
                diag.emplace(subscripts[scores.candidates[c]], scores.t_values[c]);
            }
            picked = static_cast<Eigen::Index>(scores.selected);
        }
        order.push_back(subscripts[static_cast<std::size_t>(picked)]);
        out.diagnostics.push_back(std::move(diag));

        DataMatrix next(q - 1, work.cols());
        std::vector<std::size_t> next_subscripts;
        next_subscripts.reserve(static_cast<std::size_t>(q - 1));
        bool collapsed = false;
        std::size_t collapsed_subscript = 0;
        const auto regressor = const_row(work, picked);
        Eigen::Index r = 0;
        for (Eigen::Index i = 0; i < q; ++i) {
            if (i == picked) continue;
            const std::size_t sub = subscripts[static_cast<std::size_t>(i)];
            next_subscripts.push_back(sub);
            auto dst = mutable_row(next, r++);
            if (rank_exhausted) {
                std::fill(dst.begin(), dst.end(), 0.0);
                continue;
            }
            const auto src = const_row(work, i);
            const double coef = regression_coefficient(src, regressor);
            for (std::size_t k = 0; k < n; ++k) dst[k] = src[k] - coef * regressor[k];
            const double mu = mean(dst);
            for (double& v : dst) v -= mu;
            if (!collapsed && std::sqrt(variance(dst)) <= kResidualCollapseRatio * original_sd[sub]) {
                collapsed = true;
                collapsed_subscript = sub;
            }
        }

        if (collapsed) {
            if (step + 1 < n - 1) {
                throw Error(ErrorCode::ZeroVariance,
                            "residual of variable " + std::to_string(collapsed_subscript + 1) +
                                " collapsed to a constant (exact collinearity)");
            }
            rank_exhausted = true;
            next.setZero();
        }
        work = std::move(next);
        subscripts = std::move(next_subscripts);
    }

    if (p > 0) order.push_back(subscripts.front());
    out.order = CausalOrder(std::move(order));
    return out;
}

ConnectionMatrix estimate_strengths(const Dataset& data, const CausalOrder& order) {
    require_centered(data);
    const std::size_t p = data.p();
    const std::size_t n = data.n();
    if (order.size() != p) {
        throw Error(ErrorCode::InvalidPermutation, "order length " + std::to_string(order.size()) +
                                                       " does not match " + std::to_string(p) + " variables");
    }

    ConnectionMatrix b = ConnectionMatrix::zero(p);
    for (std::size_t k = 1; k < p; ++k) {
        if (k >= n) {
            throw Error(ErrorCode::TooFewObservations,
                        "variable " + std::to_string(order[k] + 1) + " has " + std::to_string(k) +
                            " predecessors but only " + std::to_string(n) + " observations");
        }
        DataMatrix predictors(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(n));
        for (std::size_t l = 0; l < k; ++l) {
            predictors.row(static_cast<Eigen::Index>(l)) = data.values().row(static_cast<Eigen::Index>(order[l]));
        }
        const Vector coefs = multi_least_squares(data.row(order[k]), predictors);
        for (std::size_t l = 0; l < k; ++l) b(order[k], order[l]) = coefs(static_cast<Eigen::Index>(l));
    }
    return b;
}

FittedModel fit(const Dataset& data, const IndependenceConfig& cfg, unsigned threads) {
    auto estimate = estimate_order(data, cfg, threads);
    ConnectionMatrix strengths = estimate_strengths(data, estimate.order);
    return FittedModel{std::move(estimate.order), std::move(strengths), std::move(estimate.diagnostics)};
}

}  // namespace lingam
