#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "lingam/core.hpp"

namespace lingam {

// Interval for b(i, j), the strength of the edge x_j -> x_i.
struct EdgeInterval {
    std::size_t i = 0;
    std::size_t j = 0;
    double point = 0.0;
    double lower = 0.0;
    double upper = 0.0;
    bool significant = false;  // 0 lies outside [lower, upper]
};

struct BootstrapConfig {
    double level = 0.99;
    std::size_t resamples = 2000;
    std::uint64_t seed = 0;
    // Attempts per resample slot before giving up on singular draws.
    std::size_t max_attempts = 20;
};

// Resampled coefficients for every pair (order[k], order[l]), l < k, with the
// ordering held fixed. Resample b draws from Rng(derive_seed(seed, b)).
struct BootstrapDistribution {
    std::vector<EdgeInterval> edges;          // point estimates filled, bounds unset
    std::vector<std::vector<double>> samples; // per edge, ascending
    std::size_t redraws = 0;                  // singular draws replaced
};

BootstrapDistribution bootstrap_distribution(const Dataset& data, const CausalOrder& order,
                                             const BootstrapConfig& cfg = {}, unsigned threads = 1);

// Percentile intervals at (1 - level)/2 and 1 - (1 - level)/2.
std::vector<EdgeInterval> percentile_intervals(const BootstrapDistribution& dist, double level);

struct BootstrapResult {
    std::vector<EdgeInterval> edges;
    std::size_t redraws = 0;
};

// Throws TooManySingularResamples when a slot exhausts max_attempts.
BootstrapResult bootstrap_cis(const Dataset& data, const CausalOrder& order, const BootstrapConfig& cfg = {},
                              unsigned threads = 1);

}  // namespace lingam
