#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "lingam/core.hpp"
#include "lingam/rng.hpp"

namespace lingam {

enum class NetworkKind { dense, sparse, random };

std::string_view to_string(NetworkKind kind) noexcept;
NetworkKind parse_network_kind(std::string_view text);

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
};

struct SynthConfig {
    std::size_t p = 3;
    std::size_t n = 1000;
    NetworkKind network = NetworkKind::random;
    Interval parent_std_range{0.5, 1.5};
    Interval noise_std_range{0.5, 1.5};
    // Exponents are drawn from one of the two intervals, each with probability 1/2.
    std::array<Interval, 2> q_ranges{{{0.5, 0.8}, {1.2, 2.0}}};
    // Provisional edge weights are uniform in [-1, -floor] U [floor, 1] before rescaling.
    double min_edge_magnitude = 0.1;
    double sparse_edge_probability = 0.5;
    std::uint64_t seed = 0;

    // Throws InvalidArgument on unordered or non-positive intervals, p < 1 or n < 2.
    void validate() const;
};

struct GroundTruthModel {
    ConnectionMatrix b_true;  // strictly lower triangular in generation order
    Vector noise_stds;
    Vector exponents;
    CausalOrder shuffle;  // emitted variable k is generated variable shuffle[k]

    // Connection matrix in the coordinates of the emitted dataset.
    ConnectionMatrix emitted_b() const;
    // A causal order of the emitted variables consistent with the true DAG.
    CausalOrder emitted_order() const;
};

GroundTruthModel random_model(const SynthConfig& cfg, Rng& rng);

// sign(z)|z|^q of standard normal draws, standardized to sample mean 0 and
// sample variance 1 (1/n moments).
std::vector<double> sample_non_gaussian(std::size_t n, double q, Rng& rng);

struct StructuralSample {
    DataMatrix noise;     // e, one row per generated variable
    DataMatrix observed;  // x = B x + e, generation order, not centered
};

StructuralSample sample_structural(const GroundTruthModel& model, std::size_t n, Rng& rng);

struct SyntheticData {
    Dataset data;  // shuffled and centered
    GroundTruthModel truth;
};

SyntheticData generate(const SynthConfig& cfg, Rng& rng);
SyntheticData generate(const SynthConfig& cfg);  // uses Rng(cfg.seed)

}  // namespace lingam
