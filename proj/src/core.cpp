#include "lingam/core.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <queue>

namespace lingam {

namespace {

// A row counts as centered once its mean is within a few ulps of its scale.
// Rows that pass are left untouched, which keeps center() idempotent bit-for-bit.
constexpr double kMeanTolerance = 64.0 * std::numeric_limits<double>::epsilon();
constexpr int kMaxCenteringPasses = 4;

void check_same_size(std::size_t a, std::size_t b, const char* what) {
    if (a != b) {
        throw Error(ErrorCode::DimensionMismatch,
                    std::string(what) + ": length " + std::to_string(a) + " vs " + std::to_string(b));
    }
}

bool is_constant(std::span<const double> x) {
    return std::all_of(x.begin(), x.end(), [first = x.front()](double v) { return v == first; });
}

double max_abs(std::span<const double> x) {
    double m = 0.0;
    for (double v : x) m = std::max(m, std::abs(v));
    return m;
}

void center_row(std::span<double> x) {
    for (int pass = 0; pass < kMaxCenteringPasses; ++pass) {
        const double mu = mean(x);
        if (std::abs(mu) <= kMeanTolerance * max_abs(x)) return;
        for (double& v : x) v -= mu;
    }
}

}  // namespace

double mean(std::span<const double> x) noexcept {
    if (x.empty()) return 0.0;
    double s = 0.0;
    for (double v : x) s += v;
    return s / static_cast<double>(x.size());
}

double variance(std::span<const double> x) noexcept {
    if (x.empty()) return 0.0;
    const double mu = mean(x);
    double s = 0.0;
    for (double v : x) s += (v - mu) * (v - mu);
    return s / static_cast<double>(x.size());
}

double covariance(std::span<const double> x, std::span<const double> y) noexcept {
    if (x.empty() || x.size() != y.size()) return 0.0;
    const double mx = mean(x);
    const double my = mean(y);
    double s = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) s += (x[k] - mx) * (y[k] - my);
    return s / static_cast<double>(x.size());
}

double quantile_sorted(std::span<const double> sorted, double prob) {
    if (sorted.empty()) throw Error(ErrorCode::InvalidArgument, "quantile of an empty sample");
    if (!(prob >= 0.0 && prob <= 1.0)) throw Error(ErrorCode::InvalidArgument, "quantile level outside [0, 1]");
    const double h = static_cast<double>(sorted.size() - 1) * prob;
    const auto lo = static_cast<std::size_t>(std::floor(h));
    if (lo + 1 >= sorted.size()) return sorted[lo];
    const double frac = h - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

std::vector<std::string> default_labels(std::size_t p) {
    std::vector<std::string> labels;
    labels.reserve(p);
    for (std::size_t i = 0; i < p; ++i) labels.push_back("x" + std::to_string(i + 1));
    return labels;
}

namespace {

void validate_raw(const DataMatrix& raw, std::vector<std::string>& labels) {
    if (raw.rows() < 1) throw Error(ErrorCode::DimensionError, "dataset needs at least one variable");
    if (raw.cols() < 2) {
        throw Error(ErrorCode::DimensionError,
                    "dataset needs at least 2 observations, got " + std::to_string(raw.cols()));
    }
    const auto p = static_cast<std::size_t>(raw.rows());
    if (labels.empty()) labels = default_labels(p);
    if (labels.size() != p) {
        throw Error(ErrorCode::DimensionError, "expected " + std::to_string(p) + " labels, got " +
                                                   std::to_string(labels.size()));
    }
    for (Eigen::Index i = 0; i < raw.rows(); ++i) {
        std::span<const double> row(raw.data() + i * raw.cols(), static_cast<std::size_t>(raw.cols()));
        if (is_constant(row)) {
            throw Error(ErrorCode::ZeroVarianceRow,
                        "variable " + std::to_string(i + 1) + " (" + labels[i] + ") is constant");
        }
    }
}

}  // namespace

Dataset Dataset::center(DataMatrix raw, std::vector<std::string> labels) {
    validate_raw(raw, labels);
    for (Eigen::Index i = 0; i < raw.rows(); ++i) {
        center_row(std::span<double>(raw.data() + i * raw.cols(), static_cast<std::size_t>(raw.cols())));
    }
    return Dataset(std::move(raw), std::move(labels), true);
}

Dataset Dataset::uncentered(DataMatrix raw, std::vector<std::string> labels) {
    validate_raw(raw, labels);
    return Dataset(std::move(raw), std::move(labels), false);
}

std::span<const double> Dataset::row(std::size_t i) const {
    if (i >= p()) throw Error(ErrorCode::DimensionError, "row index out of range");
    return {values_.data() + i * n(), n()};
}

CausalOrder::CausalOrder(std::vector<std::size_t> order) : order_(std::move(order)) {
    std::vector<bool> seen(order_.size(), false);
    for (std::size_t v : order_) {
        if (v >= order_.size() || seen[v]) {
            throw Error(ErrorCode::InvalidPermutation, "order is not a permutation of 1.." +
                                                           std::to_string(order_.size()));
        }
        seen[v] = true;
    }
}

CausalOrder CausalOrder::identity(std::size_t p) {
    std::vector<std::size_t> order(p);
    for (std::size_t i = 0; i < p; ++i) order[i] = i;
    return CausalOrder(std::move(order));
}

std::vector<std::size_t> CausalOrder::positions() const {
    std::vector<std::size_t> pos(order_.size());
    for (std::size_t k = 0; k < order_.size(); ++k) pos[order_[k]] = k;
    return pos;
}

CausalOrder CausalOrder::inverse() const { return CausalOrder(positions()); }

ConnectionMatrix::ConnectionMatrix(Matrix entries) : entries_(std::move(entries)) {
    if (entries_.rows() != entries_.cols()) {
        throw Error(ErrorCode::DimensionError, "connection matrix must be square");
    }
}

ConnectionMatrix ConnectionMatrix::zero(std::size_t p) {
    const auto sz = static_cast<Eigen::Index>(p);
    return ConnectionMatrix(Matrix::Zero(sz, sz));
}

MixingMatrix MixingMatrix::from_connection(const ConnectionMatrix& b) {
    const auto p = static_cast<Eigen::Index>(b.size());
    const Matrix w = Matrix::Identity(p, p) - b.entries();
    return MixingMatrix{w.partialPivLu().inverse()};
}

double regression_coefficient(std::span<const double> xi, std::span<const double> xj) {
    check_same_size(xi.size(), xj.size(), "regression");
    double sxy = 0.0;
    double sxx = 0.0;
    for (std::size_t k = 0; k < xj.size(); ++k) {
        sxy += xi[k] * xj[k];
        sxx += xj[k] * xj[k];
    }
    if (sxx == 0.0) throw Error(ErrorCode::ZeroVariance, "regressor has zero variance");
    return sxy / sxx;
}

SimpleResidual simple_residual(std::span<const double> xi, std::span<const double> xj) {
    SimpleResidual out;
    out.coef = regression_coefficient(xi, xj);
    out.residual.resize(xi.size());
    for (std::size_t k = 0; k < xi.size(); ++k) out.residual[k] = xi[k] - out.coef * xj[k];
    return out;
}

Vector multi_least_squares(std::span<const double> y, const DataMatrix& predictors) {
    const auto k = predictors.rows();
    const auto n = predictors.cols();
    check_same_size(y.size(), static_cast<std::size_t>(n), "least squares");
    if (k == 0) return Vector();
    if (k >= n) {
        throw Error(ErrorCode::TooFewObservations,
                    std::to_string(k) + " predictors need more than " + std::to_string(n) + " observations");
    }

    const Matrix gram = predictors * predictors.transpose();
    const Eigen::SelfAdjointEigenSolver<Matrix> eig(gram, Eigen::EigenvaluesOnly);
    const double largest = eig.eigenvalues().maxCoeff();
    const double smallest = eig.eigenvalues().minCoeff();
    if (!(largest > 0.0) || smallest / largest < kGramRcondThreshold) {
        throw Error(ErrorCode::SingularDesign, "predictor Gram matrix is numerically singular");
    }

    const Eigen::Map<const Vector> target(y.data(), n);
    const Matrix design = predictors.transpose();
    return design.householderQr().solve(target);
}

ConnectionMatrix permute_matrix(const ConnectionMatrix& b, const CausalOrder& order) {
    if (order.size() != b.size()) {
        throw Error(ErrorCode::InvalidPermutation, "permutation length " + std::to_string(order.size()) +
                                                       " does not match matrix size " + std::to_string(b.size()));
    }
    const auto p = b.size();
    ConnectionMatrix out = ConnectionMatrix::zero(p);
    for (std::size_t i = 0; i < p; ++i) {
        for (std::size_t j = 0; j < p; ++j) out(i, j) = b(order[i], order[j]);
    }
    return out;
}

bool is_strictly_lower_triangular(const Matrix& m) noexcept {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = i; j < m.cols(); ++j) {
            if (m(i, j) != 0.0) return false;
        }
    }
    return true;
}

std::optional<CausalOrder> find_strict_lower_permutation(const ConnectionMatrix& b) {
    const auto p = b.size();
    // pending[i] counts nonzero entries of row i over columns not yet emitted.
    std::vector<std::size_t> pending(p, 0);
    for (std::size_t i = 0; i < p; ++i) {
        for (std::size_t j = 0; j < p; ++j) pending[i] += b(i, j) != 0.0 ? 1 : 0;
    }

    std::priority_queue<std::size_t, std::vector<std::size_t>, std::greater<>> ready;
    for (std::size_t i = 0; i < p; ++i) {
        if (pending[i] == 0) ready.push(i);
    }

    std::vector<std::size_t> order;
    order.reserve(p);
    while (!ready.empty()) {
        const std::size_t v = ready.top();
        ready.pop();
        order.push_back(v);
        for (std::size_t i = 0; i < p; ++i) {
            if (i != v && b(i, v) != 0.0 && --pending[i] == 0) ready.push(i);
        }
    }
    if (order.size() != p) return std::nullopt;
    return CausalOrder(std::move(order));
}

}  // namespace lingam
