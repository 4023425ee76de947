#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "lingam/core.hpp"

namespace lingam {

// Deflationary FastICA with the tanh contrast and Gram-Schmidt decorrelation.
struct FastIcaConfig {
    std::size_t max_iterations = 1000;
    double tolerance = 1e-6;  // on |1 - |<w_new, w_old>||
    std::size_t restarts = 5; // extra random starts per component on non-convergence
    std::uint64_t seed = 0;
};

struct Whitening {
    DataMatrix whitened;  // p x n, sample covariance = I
    Matrix transform;     // whitened = transform * data
};

// Eigendecomposition-based whitening of centered data. Throws RankDeficient
// when p > n or the sample covariance is numerically singular.
Whitening whiten(const Dataset& data);

struct FastIcaResult {
    Matrix unmixing;  // rows of unmixing * data are the estimated components
    bool converged = true;
};

FastIcaResult fastica(const Dataset& data, const FastIcaConfig& cfg = {});

struct DiagonalPermutation {
    Matrix permuted;                      // permuted.row(i) = w.row(row_for_slot[i])
    std::vector<std::size_t> row_for_slot;
    double cost = 0.0;                    // sum_i 1 / |permuted(i, i)|
};

// Row permutation minimizing sum_i 1/|W(i, i)|. Throws NoFeasibleAssignment
// when every permutation puts a zero on the diagonal.
DiagonalPermutation diagonal_permutation(const Matrix& w);

// B = I - D^-1 W with D = diag(W). Throws ZeroDiagonal.
ConnectionMatrix b_from_unmixing(const Matrix& w);

struct PruneResult {
    CausalOrder order;
    ConnectionMatrix pruned;
    std::size_t tests = 0;  // permutability tests performed
};

// Zeroes the p(p+1)/2 smallest-magnitude entries, then keeps zeroing the next
// smallest until the matrix can be permuted to strictly lower triangular.
// Ties in magnitude are taken in (row, column) order.
PruneResult prune_and_order(const ConnectionMatrix& b);

struct BaselineModel {
    CausalOrder order;
    ConnectionMatrix strengths;  // before pruning
    ConnectionMatrix pruned;
    bool converged = true;
};

BaselineModel ica_lingam_fit(const Dataset& data, const FastIcaConfig& cfg = {});

}  // namespace lingam
