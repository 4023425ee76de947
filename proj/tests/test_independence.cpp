#include <doctest.h>

#include <random>
#include <vector>

#include "lingam/independence.hpp"
#include "lingam/synth.hpp"
#include "support.hpp"

using namespace lingam;

TEST_CASE("exact proportionality gives T = 0 for the regressor") {
    DataMatrix m(2, 4);
    m << -1.5, -0.5, 0.5, 1.5, -2.25, -0.75, 0.75, 2.25;
    const std::vector<std::size_t> active{0, 1};
    CHECK(t_statistic(0, active, m) == 0.0);
    CHECK(find_most_independent(active, m) == 0);
}

TEST_CASE("tiny fixed dataset matches the scratch evaluation") {
    DataMatrix m(2, 4);
    m << -1.0, 0.25, 1.5, -0.75, 0.5, -1.25, 2.0, -1.25;
    const Dataset d = Dataset::center(m);
    const std::vector<std::size_t> active{0, 1};
    for (std::size_t j : active) {
        const double got = t_statistic(j, active, d);
        const double want = testkit::scratch_t(j, active, d.values());
        CHECK(std::fabs(got - want) <= 1e-12 * std::max(1.0, std::fabs(want)));
    }
}

TEST_CASE("T matches the scratch evaluation on random data and is order-free in the active set") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 50; ++trial) {
        const Eigen::Index p = 2 + trial % 4;
        const Eigen::Index n = 5 + trial;
        const Dataset d = Dataset::center(testkit::gaussian_matrix(p, n, rng));
        std::vector<std::size_t> active(static_cast<std::size_t>(p));
        std::iota(active.begin(), active.end(), 0);
        for (std::size_t j : active) {
            const double got = t_statistic(j, active, d);
            const double want = testkit::scratch_t(j, active, d.values());
            CHECK(got >= 0.0);
            CHECK(std::fabs(got - want) <= 1e-12 * std::max(1.0, std::fabs(want)));
            std::vector<std::size_t> reversed(active.rbegin(), active.rend());
            CHECK(t_statistic(j, reversed, d) == got);
        }
    }
}

TEST_CASE("identical rows tie and the lower subscript wins") {
    std::mt19937_64 rng(4);
    DataMatrix m = testkit::gaussian_matrix(3, 30, rng);
    m.row(2) = m.row(1);
    const Dataset d = Dataset::center(m);
    const std::vector<std::size_t> active{1, 2};
    CHECK(t_statistic(1, active, d) == t_statistic(2, active, d));
    CHECK(find_most_independent(active, d) == 1);
}

TEST_CASE("argument errors") {
    std::mt19937_64 rng(4);
    const Dataset d = Dataset::center(testkit::gaussian_matrix(3, 10, rng));
    const std::vector<std::size_t> pair{0, 1};
    CHECK(testkit::error_code([&] { t_statistic(2, pair, d); }) == ErrorCode::NotInActiveSet);
    CHECK(testkit::error_code([&] { t_statistic(0, std::vector<std::size_t>{0}, d); }) == ErrorCode::InvalidArgument);
    CHECK(testkit::error_code([&] { t_statistic(0, std::vector<std::size_t>{0, 0}, d); }) ==
          ErrorCode::InvalidArgument);
    CHECK(testkit::error_code([&] { t_statistic(0, std::vector<std::size_t>{0, 7}, d); }) ==
          ErrorCode::DimensionError);
}

TEST_CASE("the exogenous variable of the three-variable model has the smallest T") {
    const Dataset d = Dataset::center(testkit::linear_sample(testkit::example_b().entries(), 10000, 2.0, 1));
    const std::vector<std::size_t> active{0, 1, 2};
    const double t1 = t_statistic(0, active, d);
    CHECK(t1 < t_statistic(1, active, d));
    CHECK(t1 < t_statistic(2, active, d));
    CHECK(find_most_independent(active, d) == 0);

    const CandidateScores scores = score_candidates(active, d.values());
    std::size_t brute = 0;
    for (std::size_t c = 1; c < scores.t_values.size(); ++c)
        if (scores.t_values[c] < scores.t_values[brute]) brute = c;
    CHECK(scores.selected == scores.candidates[brute]);
}

TEST_CASE("parallel candidate scoring is bit-identical to sequential") {
    std::mt19937_64 rng(8);
    const Dataset d = Dataset::center(testkit::gaussian_matrix(7, 200, rng));
    const std::vector<std::size_t> active{6, 0, 3, 2, 5};
    const CandidateScores one = score_candidates(active, d.values(), {}, 1);
    const CandidateScores four = score_candidates(active, d.values(), {}, 4);
    CHECK(one.t_values == four.t_values);
    CHECK(one.selected == four.selected);
    CHECK(one.candidates == std::vector<std::size_t>{0, 2, 3, 5, 6});
}

TEST_CASE("a true exogenous variable attains the minimum T in random models") {
    int hits = 0;
    for (int trial = 0; trial < 100; ++trial) {
        SynthConfig cfg;
        cfg.p = 2 + static_cast<std::size_t>(trial % 4);
        cfg.n = 20000;
        cfg.seed = 500 + static_cast<std::uint64_t>(trial);
        const SyntheticData s = generate(cfg);
        const ConnectionMatrix b = s.truth.emitted_b();
        std::vector<std::size_t> active(cfg.p);
        std::iota(active.begin(), active.end(), 0);
        const std::size_t pick = find_most_independent(active, s.data);
        bool root = true;
        for (std::size_t j = 0; j < cfg.p; ++j) root = root && b(pick, j) == 0.0;
        hits += root ? 1 : 0;
    }
    CHECK(hits >= 95);
}
