#include <doctest.h>

#include <random>
#include <vector>

#include "lingam/assignment.hpp"
#include "lingam/ica_baseline.hpp"
#include "support.hpp"

using namespace lingam;

namespace {

// Largest off-dominant magnitude relative to the dominant one, over rows of m.
double worst_row_ratio(const Matrix& m) {
    double worst = 0.0;
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        Eigen::Index arg = 0;
        const double top = m.row(i).cwiseAbs().maxCoeff(&arg);
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            if (j != arg) worst = std::max(worst, std::fabs(m(i, j)) / top);
    }
    return worst;
}

bool one_dominant_per_column(const Matrix& m) {
    std::vector<int> seen(static_cast<std::size_t>(m.cols()), 0);
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        Eigen::Index arg = 0;
        m.row(i).cwiseAbs().maxCoeff(&arg);
        ++seen[static_cast<std::size_t>(arg)];
    }
    return std::all_of(seen.begin(), seen.end(), [](int s) { return s == 1; });
}

// Scratch pruning: zero the p(p+1)/2 smallest, then one more at a time until
// exhaustive search finds a strictly lower triangular permutation.
Matrix scratch_prune(const Matrix& b, std::size_t& extra) {
    const auto p = static_cast<std::size_t>(b.rows());
    std::vector<std::pair<double, std::size_t>> cells;
    for (std::size_t r = 0; r < p; ++r)
        for (std::size_t c = 0; c < p; ++c)
            cells.emplace_back(std::fabs(b(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c))), r * p + c);
    std::sort(cells.begin(), cells.end());
    Matrix out = b;
    std::size_t k = 0;
    for (; k < p * (p + 1) / 2; ++k) out(cells[k].second / p, cells[k].second % p) = 0.0;
    extra = 0;
    while (!testkit::brute_strict_lower(out)) {
        out(cells[k].second / p, cells[k].second % p) = 0.0;
        ++k;
        ++extra;
    }
    return out;
}

}  // namespace

TEST_CASE("whitening produces identity covariance") {
    std::mt19937_64 rng(40);
    DataMatrix x = testkit::gaussian_matrix(4, 500, rng);
    x.row(1) += 2.0 * x.row(0);
    x.row(3) -= 0.5 * x.row(2);
    const Whitening w = whiten(Dataset::center(x));
    const Matrix cov = w.whitened * w.whitened.transpose() / 500.0;
    CHECK((cov - Matrix::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("fastica on independent white sources finds a scaled permutation") {
    std::mt19937_64 rng(41);
    DataMatrix s(3, 5000);
    for (Eigen::Index i = 0; i < 3; ++i) {
        const auto row = testkit::power_noise(5000, 0.5, rng);
        for (Eigen::Index k = 0; k < 5000; ++k) s(i, k) = row[static_cast<std::size_t>(k)];
    }
    FastIcaConfig cfg;
    cfg.seed = 1;
    const FastIcaResult r = fastica(Dataset::center(s), cfg);
    CHECK(r.converged);
    CHECK(worst_row_ratio(r.unmixing) < 0.1);
    CHECK(one_dominant_per_column(r.unmixing));
}

TEST_CASE("fastica unmixes a two-source uniform mixture") {
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    DataMatrix s(2, 5000);
    for (Eigen::Index i = 0; i < 2; ++i)
        for (Eigen::Index k = 0; k < 5000; ++k) s(i, k) = u(rng);
    Matrix a(2, 2);
    a << 1, 0, 1.5, 1;
    const DataMatrix x = a * s;
    const FastIcaResult r = fastica(Dataset::center(x));
    const Matrix wa = r.unmixing * a;
    CHECK(worst_row_ratio(wa) < 0.1);
    CHECK(one_dominant_per_column(wa));
}

TEST_CASE("fastica rejects rank-deficient input and bad configs") {
    std::mt19937_64 rng(43);
    const Dataset wide = Dataset::center(testkit::gaussian_matrix(6, 4, rng));
    CHECK(testkit::error_code([&] { fastica(wide); }) == ErrorCode::RankDeficient);
    DataMatrix dup = testkit::gaussian_matrix(3, 50, rng);
    dup.row(2) = dup.row(0) + dup.row(1);
    CHECK(testkit::error_code([&] { fastica(Dataset::center(dup)); }) == ErrorCode::RankDeficient);
    FastIcaConfig bad;
    bad.max_iterations = 0;
    CHECK(testkit::error_code([&] { fastica(Dataset::center(testkit::gaussian_matrix(2, 50, rng)), bad); }) ==
          ErrorCode::InvalidArgument);
}

TEST_CASE("diagonal_permutation examples") {
    Matrix dom(3, 3);
    dom << 5, 1, 0.5, 0.2, 4, 1, 1, 0.3, 6;
    const DiagonalPermutation id = diagonal_permutation(dom);
    CHECK(id.row_for_slot == std::vector<std::size_t>{0, 1, 2});
    CHECK(id.permuted == dom);

    Matrix w(2, 2);
    w << 0, 2, 3, 0;
    const DiagonalPermutation sw = diagonal_permutation(w);
    CHECK(sw.row_for_slot == std::vector<std::size_t>{1, 0});
    CHECK(sw.cost == doctest::Approx(1.0 / 3.0 + 1.0 / 2.0));
    CHECK(sw.permuted(0, 0) == 3.0);
    CHECK(sw.permuted(1, 1) == 2.0);

    Matrix none(2, 2);
    none << 0, 0, 1, 1;
    CHECK(testkit::error_code([&] { diagonal_permutation(none); }) == ErrorCode::NoFeasibleAssignment);
}

TEST_CASE("diagonal_permutation matches brute force") {
    std::mt19937_64 rng(44);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int trial = 0; trial < 200; ++trial) {
        const Eigen::Index p = 1 + trial % 6;
        Matrix w(p, p);
        for (Eigen::Index i = 0; i < p; ++i)
            for (Eigen::Index j = 0; j < p; ++j) w(i, j) = unit(rng) < 0.3 ? 0.0 : u(rng);
        const auto want = testkit::brute_diagonal(w);
        if (!std::isfinite(want.cost)) {
            CHECK(testkit::error_code([&] { diagonal_permutation(w); }) == ErrorCode::NoFeasibleAssignment);
            continue;
        }
        const DiagonalPermutation got = diagonal_permutation(w);
        CHECK(std::fabs(got.cost - want.cost) <= 1e-12 * want.cost);
        if (want.minimizers == 1) CHECK(got.row_for_slot == want.row_for_slot);
    }
}

TEST_CASE("solve_assignment finds the minimum-cost matching") {
    Eigen::MatrixXd cost(3, 3);
    cost << 4, 1, 3, 2, 0, 5, 3, 2, 2;
    const auto a = solve_assignment(cost);
    REQUIRE(a.has_value());
    CHECK(cost(0, static_cast<Eigen::Index>((*a)[0])) + cost(1, static_cast<Eigen::Index>((*a)[1])) +
              cost(2, static_cast<Eigen::Index>((*a)[2])) ==
          5.0);
}

TEST_CASE("b_from_unmixing examples") {
    CHECK(b_from_unmixing(Matrix::Identity(3, 3)) == ConnectionMatrix::zero(3));
    Matrix w(2, 2);
    w << 2, 0, -3, 3;
    const ConnectionMatrix b = b_from_unmixing(w);
    CHECK(b(0, 0) == 0.0);
    CHECK(b(0, 1) == 0.0);
    CHECK(b(1, 0) == 1.0);
    CHECK(b(1, 1) == 0.0);

    const Matrix truth = testkit::example_b().entries();
    const Matrix round = b_from_unmixing(Matrix::Identity(3, 3) - truth).entries();
    CHECK((round - truth).cwiseAbs().maxCoeff() < 1e-15);

    Matrix zd = Matrix::Identity(2, 2);
    zd(1, 1) = 0.0;
    CHECK(testkit::error_code([&] { b_from_unmixing(zd); }) == ErrorCode::ZeroDiagonal);
}

TEST_CASE("prune_and_order keeps an already lower triangular matrix") {
    const PruneResult r = prune_and_order(testkit::example_b());
    CHECK(r.order == CausalOrder::identity(3));
    CHECK(r.pruned == testkit::example_b());
    CHECK(r.tests == 1);
}

TEST_CASE("prune_and_order removes small upper-triangle noise") {
    Matrix b = testkit::example_b().entries();
    b(0, 1) = 0.01;
    b(0, 2) = -0.01;
    b(1, 2) = 0.01;
    const PruneResult r = prune_and_order(ConnectionMatrix(b));
    CHECK(r.order == CausalOrder::identity(3));
    CHECK(r.pruned == testkit::example_b());
}

TEST_CASE("prune_and_order matches the scratch pruning, including extra rounds") {
    // Two 2-cycles survive the first cut; three more entries must go.
    Matrix adversarial(4, 4);
    adversarial << 0, 0.9, 0.01, 0.02,
                   0.8, 0, 0.03, 0.04,
                   0.95, 0.05, 0, 0.7,
                   0.06, 0.85, 0.6, 0;
    std::size_t extra = 0;
    const Matrix want = scratch_prune(adversarial, extra);
    CHECK(extra == 3);
    const PruneResult got = prune_and_order(ConnectionMatrix(adversarial));
    CHECK(got.pruned.entries() == want);
    CHECK(got.tests == extra + 1);

    std::mt19937_64 rng(45);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::size_t saw_extra = 0;
    for (int trial = 0; trial < 200; ++trial) {
        const Eigen::Index p = 2 + trial % 5;
        Matrix b(p, p);
        for (Eigen::Index i = 0; i < p; ++i)
            for (Eigen::Index j = 0; j < p; ++j) b(i, j) = i == j ? 0.0 : u(rng);
        const Matrix expect = scratch_prune(b, extra);
        saw_extra += extra >= 2 ? 1 : 0;
        const PruneResult r = prune_and_order(ConnectionMatrix(b));
        CHECK(r.pruned.entries() == expect);
        CHECK(is_strictly_lower_triangular(permute_matrix(r.pruned, r.order).entries()));
    }
    CHECK(saw_extra > 0);
}

TEST_CASE("ica_lingam_fit on the three-variable model") {
    const Dataset d = Dataset::center(testkit::linear_sample(testkit::example_b().entries(), 10000, 2.0, 46));
    FastIcaConfig cfg;
    cfg.seed = 3;
    const BaselineModel m = ica_lingam_fit(d, cfg);
    CHECK(m.order == CausalOrder::identity(3));
    CHECK((m.pruned.entries() - testkit::example_b().entries()).cwiseAbs().maxCoeff() < 0.1);

    const BaselineModel again = ica_lingam_fit(d, cfg);
    CHECK(again.order == m.order);
    CHECK(again.strengths == m.strengths);
    CHECK(again.pruned == m.pruned);
}

TEST_CASE("ica_lingam_fit on two independent variables keeps at most one small edge") {
    const Dataset d = Dataset::center(testkit::linear_sample(Matrix::Zero(2, 2), 10000, 2.0, 47));
    const BaselineModel m = ica_lingam_fit(d);
    int nonzero = 0;
    for (Eigen::Index i = 0; i < 2; ++i)
        for (Eigen::Index j = 0; j < 2; ++j) nonzero += m.pruned.entries()(i, j) != 0.0 ? 1 : 0;
    CHECK(nonzero <= 1);
    CHECK(m.pruned.entries().cwiseAbs().maxCoeff() < 0.05);
}
