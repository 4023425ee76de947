#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "lingam/error.hpp"

namespace lingam {

// Observations are stored one variable per row (p x n), rows contiguous.
using DataMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Gram matrices whose reciprocal condition number (smallest over largest
// eigenvalue) falls below this are treated as singular.
inline constexpr double kGramRcondThreshold = 1e-10;

// Sample moments use the 1/n divisor throughout.
double mean(std::span<const double> x) noexcept;
double variance(std::span<const double> x) noexcept;
double covariance(std::span<const double> x, std::span<const double> y) noexcept;

// Quantile of ascending-sorted values by linear interpolation between order
// statistics: h = (N - 1) * prob, result = x[floor(h)] + frac(h) * (x[floor(h)+1] - x[floor(h)]).
double quantile_sorted(std::span<const double> sorted, double prob);

class Dataset {
public:
    Dataset() = default;

    // Subtracts each row's sample mean. Empty labels become x1..xp.
    static Dataset center(DataMatrix raw, std::vector<std::string> labels = {});

    // Keeps the values as given; validation is the same as center().
    static Dataset uncentered(DataMatrix raw, std::vector<std::string> labels = {});

    const DataMatrix& values() const noexcept { return values_; }
    std::span<const double> row(std::size_t i) const;
    const std::vector<std::string>& labels() const noexcept { return labels_; }
    std::size_t p() const noexcept { return static_cast<std::size_t>(values_.rows()); }
    std::size_t n() const noexcept { return static_cast<std::size_t>(values_.cols()); }
    bool centered() const noexcept { return centered_; }

private:
    Dataset(DataMatrix values, std::vector<std::string> labels, bool centered)
        : values_(std::move(values)), labels_(std::move(labels)), centered_(centered) {}

    DataMatrix values_;
    std::vector<std::string> labels_;
    bool centered_ = false;
};

std::vector<std::string> default_labels(std::size_t p);

// A permutation of {0, ..., p-1}; entry k is the variable placed at position k.
class CausalOrder {
public:
    CausalOrder() = default;
    explicit CausalOrder(std::vector<std::size_t> order);

    static CausalOrder identity(std::size_t p);

    std::size_t size() const noexcept { return order_.size(); }
    std::size_t operator[](std::size_t k) const { return order_[k]; }
    const std::vector<std::size_t>& indices() const noexcept { return order_; }
    auto begin() const noexcept { return order_.begin(); }
    auto end() const noexcept { return order_.end(); }

    // position()[v] is the position of variable v in the order.
    std::vector<std::size_t> positions() const;
    CausalOrder inverse() const;

    friend bool operator==(const CausalOrder&, const CausalOrder&) = default;

private:
    std::vector<std::size_t> order_;
};

// b(i, j) is the strength of the edge x_j -> x_i.
class ConnectionMatrix {
public:
    ConnectionMatrix() = default;
    explicit ConnectionMatrix(Matrix entries);

    static ConnectionMatrix zero(std::size_t p);

    std::size_t size() const noexcept { return static_cast<std::size_t>(entries_.rows()); }
    double operator()(std::size_t i, std::size_t j) const { return entries_(i, j); }
    double& operator()(std::size_t i, std::size_t j) { return entries_(i, j); }
    const Matrix& entries() const noexcept { return entries_; }

    friend bool operator==(const ConnectionMatrix& a, const ConnectionMatrix& b) {
        return a.entries_.rows() == b.entries_.rows() && a.entries_ == b.entries_;
    }

private:
    Matrix entries_;
};

// A = (I - B)^-1, mapping external influences to observations.
struct MixingMatrix {
    Matrix entries;

    static MixingMatrix from_connection(const ConnectionMatrix& b);
};

struct SimpleResidual {
    double coef = 0.0;
    std::vector<double> residual;
};

// Least-squares slope of xi on xj for centered inputs. Throws ZeroVariance.
double regression_coefficient(std::span<const double> xi, std::span<const double> xj);

SimpleResidual simple_residual(std::span<const double> xi, std::span<const double> xj);

// Coefficients of y regressed on the k rows of predictors (no intercept).
Vector multi_least_squares(std::span<const double> y, const DataMatrix& predictors);

// out(i, j) = b(order[i], order[j]).
ConnectionMatrix permute_matrix(const ConnectionMatrix& b, const CausalOrder& order);

bool is_strictly_lower_triangular(const Matrix& m) noexcept;

// Lexicographically smallest order making b strictly lower triangular, if any.
std::optional<CausalOrder> find_strict_lower_permutation(const ConnectionMatrix& b);

}  // namespace lingam
