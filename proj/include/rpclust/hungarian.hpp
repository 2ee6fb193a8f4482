#pragma once

#include <Eigen/Dense>
#include <vector>

namespace rpclust {

/// Minimum-cost assignment for a rows x cols cost matrix with rows <= cols.
/// Returns, for every row, the assigned column. O(rows^2 cols).
std::vector<int> hungarian_min_cost(const Eigen::MatrixXd& cost);

/// Maximum-weight perfect matching on a square weight matrix.
std::vector<int> max_weight_assignment(const Eigen::MatrixXd& weight);

}  // namespace rpclust
