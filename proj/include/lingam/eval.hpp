#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lingam/core.hpp"
#include "lingam/synth.hpp"

namespace lingam {

enum class Estimator { direct, ica };

std::string_view to_string(Estimator e) noexcept;
Estimator parse_estimator(std::string_view text);

// Nonzero entries strictly above the diagonal of b_true permuted by `order`.
// Zero exactly when the order is consistent with the true DAG.
std::size_t order_errors(const ConnectionMatrix& b_true, const CausalOrder& order);

// sqrt(trace((A - B)^T (A - B))).
double frobenius_distance(const ConnectionMatrix& a, const ConnectionMatrix& b);

// Boxplot statistics. Quartiles use linear interpolation between order
// statistics; whiskers are q1 - 1.5 IQR and q3 + 1.5 IQR clamped to the
// observed range.
struct BoxplotSummary {
    std::size_t count = 0;
    double median = 0.0;
    double q1 = 0.0;
    double q3 = 0.0;
    double lower_whisker = 0.0;
    double upper_whisker = 0.0;
    double min = 0.0;
    double max = 0.0;

    friend bool operator==(const BoxplotSummary&, const BoxplotSummary&) = default;
};

// nullopt for an empty sample.
std::optional<BoxplotSummary> summarize(std::span<const double> values);

struct BenchmarkGrid {
    std::vector<std::size_t> p_values{10, 20, 50, 100};
    std::vector<std::size_t> n_values{30, 50, 80, 200, 500, 1000, 2000, 5000};
    std::size_t trials = 501;
    std::vector<Estimator> estimators{Estimator::direct, Estimator::ica};
    std::uint64_t master_seed = 0;
    NetworkKind network = NetworkKind::random;

    void validate() const;
};

struct TrialRecord {
    std::size_t trial = 0;
    std::uint64_t seed = 0;
    bool ok = false;
    std::size_t order_errors = 0;
    double frobenius = 0.0;
    double seconds = 0.0;
    std::string error;  // ErrorCode name when !ok
};

struct EstimatorSummaries {
    std::size_t failures = 0;
    std::optional<BoxplotSummary> order_errors;
    std::optional<BoxplotSummary> frobenius;
    std::optional<BoxplotSummary> seconds;

    friend bool operator==(const EstimatorSummaries&, const EstimatorSummaries&) = default;
};

// Summaries over the successful trials; failures are counted, never imputed.
EstimatorSummaries summarize_trials(std::span<const TrialRecord> trials);

struct EstimatorResult {
    Estimator estimator = Estimator::direct;
    std::vector<TrialRecord> trials;
    EstimatorSummaries summary;
};

struct CellReport {
    std::size_t p = 0;
    std::size_t n = 0;
    std::vector<EstimatorResult> results;  // one per grid estimator, grid order
};

struct EvaluationReport {
    BenchmarkGrid grid;
    std::vector<CellReport> cells;  // p-major, then n
};

// Seed of trial t in cell c: derive_seed(derive_seed(master_seed, c), t).
std::uint64_t trial_seed(std::uint64_t master_seed, std::size_t cell, std::size_t trial) noexcept;

// Generates every trial dataset, fits each estimator and records metrics in
// the coordinates of the emitted variables. Wall time covers the fit only.
// Output is identical for any thread count, apart from wall times.
EvaluationReport run_benchmark(const BenchmarkGrid& grid, unsigned threads = 1);

}  // namespace lingam
