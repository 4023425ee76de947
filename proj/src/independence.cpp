#include "lingam/independence.hpp"

#include <algorithm>
#include <cmath>

#include "lingam/parallel.hpp"

namespace lingam {

namespace {

std::span<const double> row_of(const DataMatrix& rows, std::size_t i) {
    return {rows.data() + i * static_cast<std::size_t>(rows.cols()), static_cast<std::size_t>(rows.cols())};
}

std::vector<std::size_t> checked_active(std::span<const std::size_t> active, const DataMatrix& rows) {
    std::vector<std::size_t> sorted(active.begin(), active.end());
    std::sort(sorted.begin(), sorted.end());
    if (sorted.size() < 2) throw Error(ErrorCode::InvalidArgument, "active set needs at least 2 variables");
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw Error(ErrorCode::InvalidArgument, "active set contains duplicates");
    }
    if (sorted.back() >= static_cast<std::size_t>(rows.rows())) {
        throw Error(ErrorCode::DimensionError, "active subscript " + std::to_string(sorted.back() + 1) +
                                                   " exceeds variable count");
    }
    return sorted;
}

double t_statistic_sorted(std::size_t j, const std::vector<std::size_t>& active, const DataMatrix& rows,
                          const IndependenceConfig& cfg) {
    const auto xj = row_of(rows, j);
    const std::size_t n = xj.size();

    std::vector<double> g_xj(n);
    for (std::size_t k = 0; k < n; ++k) g_xj[k] = apply(cfg.nonlinearity, xj[k]);

    std::vector<double> residual(n);
    std::vector<double> g_residual(n);
    double total = 0.0;
    for (std::size_t i : active) {
        if (i == j) continue;
        const auto xi = row_of(rows, i);
        const double coef = regression_coefficient(xi, xj);
        for (std::size_t k = 0; k < n; ++k) {
            residual[k] = xi[k] - coef * xj[k];
            g_residual[k] = apply(cfg.nonlinearity, residual[k]);
        }
        total += std::abs(correlation_or_zero(g_residual, xj)) + std::abs(correlation_or_zero(residual, g_xj));
    }
    return total;
}

}  // namespace

double apply(Nonlinearity g, double value) noexcept {
    switch (g) {
        case Nonlinearity::tanh: return std::tanh(value);
    }
    return value;
}

double correlation_or_zero(std::span<const double> a, std::span<const double> b) noexcept {
    const double ma = mean(a);
    const double mb = mean(b);
    double sab = 0.0;
    double saa = 0.0;
    double sbb = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        const double da = a[k] - ma;
        const double db = b[k] - mb;
        sab += da * db;
        saa += da * da;
        sbb += db * db;
    }
    if (saa == 0.0 || sbb == 0.0) return 0.0;
    return sab / std::sqrt(saa * sbb);
}

double t_statistic(std::size_t j, std::span<const std::size_t> active, const DataMatrix& rows,
                   const IndependenceConfig& cfg) {
    const auto sorted = checked_active(active, rows);
    if (!std::binary_search(sorted.begin(), sorted.end(), j)) {
        throw Error(ErrorCode::NotInActiveSet, "variable " + std::to_string(j + 1) + " is not in the active set");
    }
    return t_statistic_sorted(j, sorted, rows, cfg);
}

double t_statistic(std::size_t j, std::span<const std::size_t> active, const Dataset& data,
                   const IndependenceConfig& cfg) {
    return t_statistic(j, active, data.values(), cfg);
}

CandidateScores score_candidates(std::span<const std::size_t> active, const DataMatrix& rows,
                                 const IndependenceConfig& cfg, unsigned threads) {
    CandidateScores scores;
    scores.candidates = checked_active(active, rows);
    scores.t_values.assign(scores.candidates.size(), 0.0);
    parallel_for(scores.candidates.size(), threads, [&](std::size_t c) {
        scores.t_values[c] = t_statistic_sorted(scores.candidates[c], scores.candidates, rows, cfg);
    });

    std::size_t best = 0;
    for (std::size_t c = 1; c < scores.t_values.size(); ++c) {
        if (scores.t_values[c] < scores.t_values[best]) best = c;
    }
    scores.selected = scores.candidates[best];
    return scores;
}

std::size_t find_most_independent(std::span<const std::size_t> active, const DataMatrix& rows,
                                  const IndependenceConfig& cfg, unsigned threads) {
    return score_candidates(active, rows, cfg, threads).selected;
}

std::size_t find_most_independent(std::span<const std::size_t> active, const Dataset& data,
                                  const IndependenceConfig& cfg, unsigned threads) {
    return find_most_independent(active, data.values(), cfg, threads);
}

}  // namespace lingam
