#include "lingam/eval.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "lingam/direct_lingam.hpp"
#include "lingam/ica_baseline.hpp"
#include "lingam/parallel.hpp"
#include "lingam/rng.hpp"

namespace lingam {

std::string_view to_string(Estimator e) noexcept {
    switch (e) {
        case Estimator::direct: return "direct";
        case Estimator::ica: return "ica";
    }
    return "direct";
}

Estimator parse_estimator(std::string_view text) {
    if (text == "direct") return Estimator::direct;
    if (text == "ica" || text == "ica_baseline") return Estimator::ica;
    throw Error(ErrorCode::InvalidArgument, "unknown estimator '" + std::string(text) + "'");
}

std::size_t order_errors(const ConnectionMatrix& b_true, const CausalOrder& order) {
    if (b_true.size() != order.size()) {
        throw Error(ErrorCode::DimensionMismatch, "order length " + std::to_string(order.size()) +
                                                      " vs matrix size " + std::to_string(b_true.size()));
    }
    const ConnectionMatrix permuted = permute_matrix(b_true, order);
    std::size_t count = 0;
    for (std::size_t i = 0; i < permuted.size(); ++i) {
        for (std::size_t j = i + 1; j < permuted.size(); ++j) count += permuted(i, j) != 0.0 ? 1 : 0;
    }
    return count;
}

double frobenius_distance(const ConnectionMatrix& a, const ConnectionMatrix& b) {
    if (a.size() != b.size()) {
        throw Error(ErrorCode::DimensionMismatch,
                    "matrix sizes " + std::to_string(a.size()) + " vs " + std::to_string(b.size()));
    }
    const Matrix diff = a.entries() - b.entries();
    return std::sqrt((diff.transpose() * diff).trace());
}

std::optional<BoxplotSummary> summarize(std::span<const double> values) {
    if (values.empty()) return std::nullopt;
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    BoxplotSummary s;
    s.count = sorted.size();
    s.min = sorted.front();
    s.max = sorted.back();
    s.median = quantile_sorted(sorted, 0.5);
    s.q1 = quantile_sorted(sorted, 0.25);
    s.q3 = quantile_sorted(sorted, 0.75);
    const double iqr = s.q3 - s.q1;
    s.lower_whisker = std::max(s.q1 - 1.5 * iqr, s.min);
    s.upper_whisker = std::min(s.q3 + 1.5 * iqr, s.max);
    return s;
}

void BenchmarkGrid::validate() const {
    if (p_values.empty() || n_values.empty()) {
        throw Error(ErrorCode::InvalidArgument, "grid needs non-empty p_values and n_values");
    }
    if (trials < 1) throw Error(ErrorCode::InvalidArgument, "grid needs trials >= 1");
    for (std::size_t p : p_values) {
        if (p < 1) throw Error(ErrorCode::InvalidArgument, "p values must be >= 1");
    }
    for (std::size_t n : n_values) {
        if (n < 2) throw Error(ErrorCode::InvalidArgument, "n values must be >= 2");
    }
}

EstimatorSummaries summarize_trials(std::span<const TrialRecord> trials) {
    EstimatorSummaries s;
    std::vector<double> errors;
    std::vector<double> distances;
    std::vector<double> seconds;
    for (const auto& t : trials) {
        if (!t.ok) {
            ++s.failures;
            continue;
        }
        errors.push_back(static_cast<double>(t.order_errors));
        distances.push_back(t.frobenius);
        seconds.push_back(t.seconds);
    }
    s.order_errors = summarize(errors);
    s.frobenius = summarize(distances);
    s.seconds = summarize(seconds);
    return s;
}

std::uint64_t trial_seed(std::uint64_t master_seed, std::size_t cell, std::size_t trial) noexcept {
    return derive_seed(derive_seed(master_seed, cell), trial);
}

namespace {

TrialRecord run_trial(Estimator estimator, const SyntheticData& sample, const ConnectionMatrix& truth,
                      std::uint64_t seed) {
    TrialRecord record;
    record.seed = seed;
    try {
        CausalOrder order;
        ConnectionMatrix estimate;
        const auto start = std::chrono::steady_clock::now();
        if (estimator == Estimator::direct) {
            auto model = fit(sample.data);
            order = std::move(model.order);
            estimate = std::move(model.strengths);
        } else {
            FastIcaConfig cfg;
            cfg.seed = derive_seed(seed, 1);
            auto model = ica_lingam_fit(sample.data, cfg);
            order = std::move(model.order);
            estimate = std::move(model.pruned);
        }
        record.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        record.order_errors = order_errors(truth, order);
        record.frobenius = frobenius_distance(truth, estimate);
        record.ok = true;
    } catch (const Error& e) {
        record.error = std::string(to_string(e.code()));
    } catch (const std::exception&) {
        record.error = "InternalError";
    }
    return record;
}

}  // namespace

EvaluationReport run_benchmark(const BenchmarkGrid& grid, unsigned threads) {
    grid.validate();
    EvaluationReport report;
    report.grid = grid;
    for (std::size_t p : grid.p_values) {
        for (std::size_t n : grid.n_values) {
            CellReport cell;
            cell.p = p;
            cell.n = n;
            for (Estimator e : grid.estimators) {
                EstimatorResult result;
                result.estimator = e;
                result.trials.resize(grid.trials);
                cell.results.push_back(std::move(result));
            }
            report.cells.push_back(std::move(cell));
        }
    }
    if (grid.estimators.empty()) return report;

    const std::size_t tasks = report.cells.size() * grid.trials;
    parallel_for(tasks, threads, [&](std::size_t task) {
        const std::size_t c = task / grid.trials;
        const std::size_t t = task % grid.trials;
        CellReport& cell = report.cells[c];

        SynthConfig cfg;
        cfg.p = cell.p;
        cfg.n = cell.n;
        cfg.network = grid.network;
        cfg.seed = trial_seed(grid.master_seed, c, t);
        const SyntheticData sample = generate(cfg);
        const ConnectionMatrix truth = sample.truth.emitted_b();

        for (auto& result : cell.results) {
            TrialRecord record = run_trial(result.estimator, sample, truth, cfg.seed);
            record.trial = t;
            result.trials[t] = std::move(record);
        }
    });

    for (auto& cell : report.cells) {
        for (auto& result : cell.results) result.summary = summarize_trials(result.trials);
    }
    return report;
}

}  // namespace lingam
