#include "lingam/assignment.hpp"

#include <limits>

#include "lingam/error.hpp"

namespace lingam {

std::optional<std::vector<std::size_t>> solve_assignment(const Eigen::MatrixXd& cost) {
    if (cost.rows() != cost.cols()) throw Error(ErrorCode::DimensionError, "assignment cost must be square");
    const auto n = static_cast<std::size_t>(cost.rows());
    constexpr double inf = std::numeric_limits<double>::infinity();

    // 1-based potentials; column 0 is the virtual source of each augmentation.
    std::vector<double> u(n + 1, 0.0);
    std::vector<double> v(n + 1, 0.0);
    std::vector<std::size_t> row_of_col(n + 1, 0);
    std::vector<std::size_t> way(n + 1, 0);

    for (std::size_t row = 1; row <= n; ++row) {
        row_of_col[0] = row;
        std::size_t col0 = 0;
        std::vector<double> min_slack(n + 1, inf);
        std::vector<bool> used(n + 1, false);
        do {
            used[col0] = true;
            const std::size_t r0 = row_of_col[col0];
            double delta = inf;
            std::size_t col1 = 0;
            for (std::size_t c = 1; c <= n; ++c) {
                if (used[c]) continue;
                const double entry = cost(static_cast<Eigen::Index>(r0 - 1), static_cast<Eigen::Index>(c - 1));
                const double slack = entry == inf ? inf : entry - u[r0] - v[c];
                if (slack < min_slack[c]) {
                    min_slack[c] = slack;
                    way[c] = col0;
                }
                if (min_slack[c] < delta) {
                    delta = min_slack[c];
                    col1 = c;
                }
            }
            if (delta == inf) return std::nullopt;
            for (std::size_t c = 0; c <= n; ++c) {
                if (used[c]) {
                    u[row_of_col[c]] += delta;
                    v[c] -= delta;
                } else {
                    min_slack[c] -= delta;
                }
            }
            col0 = col1;
        } while (row_of_col[col0] != 0);
        do {
            const std::size_t col1 = way[col0];
            row_of_col[col0] = row_of_col[col1];
            col0 = col1;
        } while (col0 != 0);
    }

    std::vector<std::size_t> column_of(n, 0);
    for (std::size_t c = 1; c <= n; ++c) column_of[row_of_col[c] - 1] = c - 1;
    return column_of;
}

}  // namespace lingam
