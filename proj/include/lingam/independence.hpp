#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "lingam/core.hpp"

namespace lingam {

// Contrast applied elementwise inside the nonlinear correlations. Must be
// bounded and non-quadratic; add new choices here and in apply().
enum class Nonlinearity { tanh };

double apply(Nonlinearity g, double value) noexcept;

// Correlations with a zero-variance argument always contribute 0 to T.
struct IndependenceConfig {
    Nonlinearity nonlinearity = Nonlinearity::tanh;
};

// Pearson correlation with 1/n moments; 0 when either argument has zero variance.
double correlation_or_zero(std::span<const double> a, std::span<const double> b) noexcept;

// Dependence between variable j and the residuals of every other active
// variable regressed on it:
//   T = sum_{i != j} |corr(g(r_i), x_j)| + |corr(r_i, g(x_j))|.
// Rows of `rows` are variables and must be centered. The active set is
// processed in ascending order regardless of how it is passed.
double t_statistic(std::size_t j, std::span<const std::size_t> active, const DataMatrix& rows,
                   const IndependenceConfig& cfg = {});
double t_statistic(std::size_t j, std::span<const std::size_t> active, const Dataset& data,
                   const IndependenceConfig& cfg = {});

struct CandidateScores {
    std::vector<std::size_t> candidates;  // ascending
    std::vector<double> t_values;         // aligned with candidates
    std::size_t selected = 0;             // argmin, lowest subscript on ties
};

// Evaluates T for every active candidate, optionally on several threads.
// Results are bit-identical for any thread count.
CandidateScores score_candidates(std::span<const std::size_t> active, const DataMatrix& rows,
                                 const IndependenceConfig& cfg = {}, unsigned threads = 1);

std::size_t find_most_independent(std::span<const std::size_t> active, const DataMatrix& rows,
                                  const IndependenceConfig& cfg = {}, unsigned threads = 1);
std::size_t find_most_independent(std::span<const std::size_t> active, const Dataset& data,
                                  const IndependenceConfig& cfg = {}, unsigned threads = 1);

}  // namespace lingam
