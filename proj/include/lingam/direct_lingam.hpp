#pragma once

#include <cstddef>
#include <map>
#include <vector>

#include "lingam/core.hpp"
#include "lingam/independence.hpp"

namespace lingam {

// T value of every candidate considered at one selection step, keyed by
// original variable subscript.
using StepDiagnostics = std::map<std::size_t, double>;

struct OrderEstimate {
    CausalOrder order;
    std::vector<StepDiagnostics> diagnostics;  // p - 1 steps; step m has p - m entries
};

struct FittedModel {
    CausalOrder order;
    ConnectionMatrix strengths;
    std::vector<StepDiagnostics> diagnostics;
};

// A residual row whose standard deviation drops below this fraction of its
// original variable's standard deviation is treated as collapsed.
inline constexpr double kResidualCollapseRatio = 1e-9;

// Recursive exogenous-variable extraction. Exactly p - 1 selection steps:
// each step picks the candidate whose residuals are most independent of it,
// then replaces every remaining variable by its residual on the pick.
//
// Once the residuals have used up the rank of the centered data (at least
// n - 1 extractions, only possible when p >= n) the remaining rows are zero,
// every T is 0 and the rest of the order falls back to ascending subscript.
// Collapse before that point means exact collinearity and throws ZeroVariance.
OrderEstimate estimate_order(const Dataset& data, const IndependenceConfig& cfg = {}, unsigned threads = 1);

// Least-squares regression of each variable on all of its predecessors in
// `order`, using the original data. Entries on or above the permuted diagonal
// are exactly zero.
ConnectionMatrix estimate_strengths(const Dataset& data, const CausalOrder& order);

FittedModel fit(const Dataset& data, const IndependenceConfig& cfg = {}, unsigned threads = 1);

}  // namespace lingam
