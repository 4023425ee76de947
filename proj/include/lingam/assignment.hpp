#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include <Eigen/Dense>

namespace lingam {

// Square linear assignment (Hungarian method, O(p^3)). Returns column_of[row]
// minimizing the summed cost, or nullopt when every assignment uses an
// infinite entry. Infinite costs mark forbidden pairs.
std::optional<std::vector<std::size_t>> solve_assignment(const Eigen::MatrixXd& cost);

}  // namespace lingam
