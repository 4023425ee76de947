#pragma once

// Fixtures and brute-force oracles shared by the unit and acceptance tests.
// Oracles deliberately avoid the library's algorithms: plain loops, naive
// elimination and exhaustive enumeration only.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <random>
#include <vector>

#include "lingam/core.hpp"

namespace testkit {

using lingam::ConnectionMatrix;
using lingam::DataMatrix;
using lingam::Matrix;

// Code of the lingam::Error thrown by f, if any.
template <typename F>
std::optional<lingam::ErrorCode> error_code(F&& f) {
    try {
        f();
    } catch (const lingam::Error& e) {
        return e.code();
    }
    return std::nullopt;
}

inline ConnectionMatrix example_b() {
    Matrix b = Matrix::Zero(3, 3);
    b(1, 0) = 1.5;
    b(2, 0) = 0.8;
    b(2, 1) = -1.5;
    return ConnectionMatrix(b);
}

// sign(z)|z|^q of standard normals, standardized with 1/n moments.
inline std::vector<double> power_noise(std::size_t n, double q, std::mt19937_64& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<double> e(n);
    for (auto& v : e) {
        const double z = normal(rng);
        v = (z < 0 ? -1.0 : 1.0) * std::pow(std::fabs(z), q);
    }
    double m = 0.0;
    for (double v : e) m += v;
    m /= static_cast<double>(n);
    double ss = 0.0;
    for (double v : e) ss += (v - m) * (v - m);
    const double sd = std::sqrt(ss / static_cast<double>(n));
    for (auto& v : e) v = (v - m) / sd;
    return e;
}

// x = B x + e solved forward for a strictly lower triangular B.
inline DataMatrix forward_solve(const Matrix& b, const DataMatrix& e) {
    DataMatrix x = e;
    for (Eigen::Index i = 0; i < b.rows(); ++i) {
        for (Eigen::Index j = 0; j < i; ++j) {
            if (b(i, j) != 0.0) x.row(i) += b(i, j) * x.row(j);
        }
    }
    return x;
}

inline DataMatrix linear_sample(const Matrix& b, std::size_t n, double q, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const auto p = b.rows();
    DataMatrix e(p, static_cast<Eigen::Index>(n));
    for (Eigen::Index i = 0; i < p; ++i) {
        const auto row = power_noise(n, q, rng);
        for (std::size_t k = 0; k < n; ++k) e(i, static_cast<Eigen::Index>(k)) = row[k];
    }
    return forward_solve(b, e);
}

inline DataMatrix gaussian_matrix(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    DataMatrix m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index k = 0; k < cols; ++k) m(i, k) = normal(rng);
    return m;
}

// Gaussian elimination with partial pivoting.
inline std::vector<double> gauss_solve(std::vector<std::vector<double>> a, std::vector<double> b) {
    const std::size_t k = b.size();
    for (std::size_t c = 0; c < k; ++c) {
        std::size_t piv = c;
        for (std::size_t r = c + 1; r < k; ++r)
            if (std::fabs(a[r][c]) > std::fabs(a[piv][c])) piv = r;
        std::swap(a[c], a[piv]);
        std::swap(b[c], b[piv]);
        for (std::size_t r = c + 1; r < k; ++r) {
            const double f = a[r][c] / a[c][c];
            for (std::size_t cc = c; cc < k; ++cc) a[r][cc] -= f * a[c][cc];
            b[r] -= f * b[c];
        }
    }
    std::vector<double> x(k);
    for (std::size_t r = k; r-- > 0;) {
        double s = b[r];
        for (std::size_t cc = r + 1; cc < k; ++cc) s -= a[r][cc] * x[cc];
        x[r] = s / a[r][r];
    }
    return x;
}

// Normal equations of y on the rows of `predictors`, solved by elimination.
inline std::vector<double> least_squares_oracle(const std::vector<double>& y,
                                                const std::vector<std::vector<double>>& predictors) {
    const std::size_t k = predictors.size();
    std::vector<std::vector<double>> gram(k, std::vector<double>(k, 0.0));
    std::vector<double> rhs(k, 0.0);
    for (std::size_t a = 0; a < k; ++a) {
        for (std::size_t t = 0; t < y.size(); ++t) rhs[a] += predictors[a][t] * y[t];
        for (std::size_t c = 0; c < k; ++c)
            for (std::size_t t = 0; t < y.size(); ++t) gram[a][c] += predictors[a][t] * predictors[c][t];
    }
    return gauss_solve(gram, rhs);
}

inline std::vector<double> row_vector(const DataMatrix& m, Eigen::Index i) {
    return std::vector<double>(m.row(i).data(), m.row(i).data() + m.cols());
}

// Independent transliteration of the nonlinear-correlation statistic:
// sum over i != j of |corr(tanh(r_i), x_j)| + |corr(r_i, tanh(x_j))|, where
// r_i is the residual of x_i regressed on x_j. Degenerate correlations are 0.
inline double scratch_t(std::size_t j, const std::vector<std::size_t>& active, const DataMatrix& rows) {
    const auto n = static_cast<std::size_t>(rows.cols());
    auto corr = [n](const std::vector<double>& a, const std::vector<double>& b) {
        double ma = 0.0;
        double mb = 0.0;
        for (std::size_t t = 0; t < n; ++t) {
            ma += a[t];
            mb += b[t];
        }
        ma /= static_cast<double>(n);
        mb /= static_cast<double>(n);
        double sab = 0.0;
        double saa = 0.0;
        double sbb = 0.0;
        for (std::size_t t = 0; t < n; ++t) {
            sab += (a[t] - ma) * (b[t] - mb);
            saa += (a[t] - ma) * (a[t] - ma);
            sbb += (b[t] - mb) * (b[t] - mb);
        }
        if (saa == 0.0 || sbb == 0.0) return 0.0;
        return sab / std::sqrt(saa * sbb);
    };
    const auto xj = row_vector(rows, static_cast<Eigen::Index>(j));
    std::vector<double> gxj(n);
    for (std::size_t t = 0; t < n; ++t) gxj[t] = std::tanh(xj[t]);
    double sxx = 0.0;
    for (double v : xj) sxx += v * v;
    double total = 0.0;
    for (std::size_t i : active) {
        if (i == j) continue;
        const auto xi = row_vector(rows, static_cast<Eigen::Index>(i));
        double sxy = 0.0;
        for (std::size_t t = 0; t < n; ++t) sxy += xi[t] * xj[t];
        const double coef = sxy / sxx;
        std::vector<double> r(n);
        std::vector<double> gr(n);
        for (std::size_t t = 0; t < n; ++t) {
            r[t] = xi[t] - coef * xj[t];
            gr[t] = std::tanh(r[t]);
        }
        total += std::fabs(corr(gr, xj)) + std::fabs(corr(r, gxj));
    }
    return total;
}

// Lexicographically smallest order whose permuted matrix is strictly lower
// triangular, by enumeration.
inline std::optional<std::vector<std::size_t>> brute_strict_lower(const Matrix& b) {
    const auto p = static_cast<std::size_t>(b.rows());
    std::vector<std::size_t> perm(p);
    std::iota(perm.begin(), perm.end(), 0);
    do {
        bool ok = true;
        for (std::size_t i = 0; i < p && ok; ++i)
            for (std::size_t j = i; j < p && ok; ++j)
                if (b(static_cast<Eigen::Index>(perm[i]), static_cast<Eigen::Index>(perm[j])) != 0.0) ok = false;
        if (ok) return perm;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return std::nullopt;
}

struct BruteAssignment {
    std::vector<std::size_t> row_for_slot;
    double cost = std::numeric_limits<double>::infinity();
    std::size_t minimizers = 0;  // permutations within tolerance of the best
};

// Row permutation minimizing sum_i 1/|W(row_for_slot[i], i)|, by enumeration.
inline BruteAssignment brute_diagonal(const Matrix& w) {
    const auto p = static_cast<std::size_t>(w.rows());
    std::vector<std::size_t> perm(p);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<std::pair<double, std::vector<std::size_t>>> all;
    do {
        double cost = 0.0;
        for (std::size_t i = 0; i < p; ++i) {
            const double a = std::fabs(w(static_cast<Eigen::Index>(perm[i]), static_cast<Eigen::Index>(i)));
            cost += a == 0.0 ? std::numeric_limits<double>::infinity() : 1.0 / a;
        }
        all.emplace_back(cost, perm);
    } while (std::next_permutation(perm.begin(), perm.end()));
    BruteAssignment best;
    for (const auto& [cost, pm] : all) {
        if (cost < best.cost) {
            best.cost = cost;
            best.row_for_slot = pm;
        }
    }
    if (std::isfinite(best.cost)) {
        for (const auto& entry : all)
            if (std::fabs(entry.first - best.cost) <= 1e-12 * best.cost) ++best.minimizers;
    }
    return best;
}

// Random acyclic matrix in a random variable order, with optional extra
// entries that may or may not close a cycle.
inline Matrix random_dag_matrix(std::size_t p, std::mt19937_64& rng, int extra_entries) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<std::size_t> perm(p);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    const auto sz = static_cast<Eigen::Index>(p);
    Matrix b = Matrix::Zero(sz, sz);
    for (std::size_t i = 0; i < p; ++i)
        for (std::size_t j = 0; j < i; ++j)
            if (unit(rng) < 0.5)
                b(static_cast<Eigen::Index>(perm[i]), static_cast<Eigen::Index>(perm[j])) = unit(rng) - 0.5;
    std::uniform_int_distribution<Eigen::Index> cell(0, sz - 1);
    for (int e = 0; e < extra_entries; ++e) b(cell(rng), cell(rng)) = unit(rng) + 0.1;
    return b;
}

inline double excess_kurtosis(const std::vector<double>& x) {
    double m = 0.0;
    for (double v : x) m += v;
    m /= static_cast<double>(x.size());
    double m2 = 0.0;
    double m4 = 0.0;
    for (double v : x) {
        const double d = (v - m) * (v - m);
        m2 += d;
        m4 += d * d;
    }
    m2 /= static_cast<double>(x.size());
    m4 /= static_cast<double>(x.size());
    return m4 / (m2 * m2) - 3.0;
}

// Population covariance of x = A e with independent e_i of the given stds,
// propagated one variable at a time: Cov(x_i, x_k) = sum_j b_ij Cov(x_j, x_k)
// for k < i, and Var(x_i) = b_i' S b_i + s_i^2.
inline Matrix covariance_recursion(const Matrix& b, const std::vector<double>& noise_stds) {
    const auto p = b.rows();
    Matrix s = Matrix::Zero(p, p);
    for (Eigen::Index i = 0; i < p; ++i) {
        for (Eigen::Index k = 0; k < i; ++k) {
            double c = 0.0;
            for (Eigen::Index j = 0; j < i; ++j) c += b(i, j) * s(j, k);
            s(i, k) = c;
            s(k, i) = c;
        }
        double v = 0.0;
        for (Eigen::Index j = 0; j < i; ++j)
            for (Eigen::Index l = 0; l < i; ++l) v += b(i, j) * b(i, l) * s(j, l);
        s(i, i) = v + noise_stds[static_cast<std::size_t>(i)] * noise_stds[static_cast<std::size_t>(i)];
    }
    return s;
}

// Standard deviation of sum_j b_ij x_j under the covariance s.
inline double parent_contribution_std(const Matrix& b, const Matrix& s, Eigen::Index i) {
    double v = 0.0;
    for (Eigen::Index j = 0; j < i; ++j)
        for (Eigen::Index l = 0; l < i; ++l) v += b(i, j) * b(i, l) * s(j, l);
    return std::sqrt(v);
}

}  // namespace testkit
