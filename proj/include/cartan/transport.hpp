#pragma once

// Dense bipartite network solvers used by the measure module.

#include <Eigen/Dense>

#include <cstddef>
#include <vector>

namespace cartan::transport {

struct TransportPlan {
    Eigen::MatrixXd flow;
    double cost = 0.0;
    std::size_t pivots = 0;
};

/// Minimum-cost transportation problem between `supply` (rows) and `demand`
/// (columns) with equal totals. Transportation-tableau network simplex:
/// north-west corner start, Bland's rule for both entering and leaving arcs,
/// so the returned plan is a deterministic function of the inputs.
TransportPlan solveTransport(const Eigen::VectorXd& supply, const Eigen::VectorXd& demand,
                             const Eigen::MatrixXd& cost);

struct FlowResult {
    double value = 0.0;
    Eigen::MatrixXd flow;  // row -> column arc flows
};

/// Maximum flow source -> rows -> columns -> sink where a row/column arc exists
/// iff admissible(i, j); arc capacities are unbounded, node capacities are
/// `supply` and `demand`. Edmonds-Karp on the residual graph.
FlowResult maxBipartiteFlow(const Eigen::VectorXd& supply, const Eigen::VectorXd& demand,
                            const std::vector<std::vector<bool>>& admissible);

}  // namespace cartan::transport
