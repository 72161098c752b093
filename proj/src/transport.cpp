#include "cartan/transport.hpp"

#include "cartan/matcore.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <utility>

namespace cartan::transport {

namespace {

struct Cell {
    Eigen::Index row;
    Eigen::Index col;
};

// Tree nodes: rows are 0..n-1, columns are n..n+k-1.
struct Tree {
    Eigen::Index n;
    Eigen::Index k;
    std::vector<std::vector<std::pair<Eigen::Index, std::size_t>>> adj;  // (node, basis index)

    Tree(Eigen::Index rows, Eigen::Index cols, const std::vector<Cell>& basis)
        : n(rows), k(cols), adj(static_cast<std::size_t>(rows + cols)) {
        for (std::size_t b = 0; b < basis.size(); ++b) {
            const Eigen::Index r = basis[b].row;
            const Eigen::Index c = n + basis[b].col;
            adj[r].emplace_back(c, b);
            adj[c].emplace_back(r, b);
        }
    }

    // Basis indices on the unique tree path from `from` to `to`.
    std::vector<std::size_t> path(Eigen::Index from, Eigen::Index to) const {
        const std::size_t nodes = adj.size();
        std::vector<long> parent_edge(nodes, -1);
        std::vector<Eigen::Index> parent(nodes, -1);
        std::vector<bool> seen(nodes, false);
        std::deque<Eigen::Index> queue{from};
        seen[from] = true;
        while (!queue.empty()) {
            const Eigen::Index u = queue.front();
            queue.pop_front();
            if (u == to) break;
            for (const auto& [w, b] : adj[u]) {
                if (seen[w]) continue;
                seen[w] = true;
                parent[w] = u;
                parent_edge[w] = static_cast<long>(b);
                queue.push_back(w);
            }
        }
        if (!seen[to]) throw Error("solveTransport: basis is not a spanning tree");
        std::vector<std::size_t> edges;
        for (Eigen::Index v = to; v != from; v = parent[v]) {
            edges.push_back(static_cast<std::size_t>(parent_edge[v]));
        }
        std::reverse(edges.begin(), edges.end());
        return edges;
    }
};

}  // namespace

TransportPlan solveTransport(const Eigen::VectorXd& supply, const Eigen::VectorXd& demand,
                             const Eigen::MatrixXd& cost) {
    const Eigen::Index n = supply.size();
    const Eigen::Index k = demand.size();
    if (n == 0 || k == 0 || cost.rows() != n || cost.cols() != k) {
        throw DimensionError("solveTransport: shape mismatch");
    }
    if ((supply.array() < 0.0).any() || (demand.array() < 0.0).any()) {
        throw DomainError("solveTransport: negative marginal");
    }
    if (std::abs(supply.sum() - demand.sum()) > 1e-9 * std::max(1.0, supply.sum())) {
        throw Error("solveTransport: infeasible (marginal totals differ)");
    }

    // North-west corner start; exactly n + k - 1 basic cells (some degenerate).
    Eigen::MatrixXd flow = Eigen::MatrixXd::Zero(n, k);
    std::vector<Cell> basis;
    basis.reserve(static_cast<std::size_t>(n + k - 1));
    {
        Eigen::VectorXd s = supply;
        Eigen::VectorXd d = demand;
        Eigen::Index i = 0;
        Eigen::Index j = 0;
        while (true) {
            const bool last = (i == n - 1 && j == k - 1);
            flow(i, j) = std::max(0.0, std::min(s(i), d(j)));
            basis.push_back({i, j});
            if (last) break;
            if (i < n - 1 && (s(i) <= d(j) || j == k - 1)) {
                d(j) = std::max(0.0, d(j) - s(i));
                s(i) = 0.0;
                ++i;
            } else {
                s(i) = std::max(0.0, s(i) - d(j));
                d(j) = 0.0;
                ++j;
            }
        }
    }

    const double cost_scale = std::max(1.0, cost.cwiseAbs().maxCoeff());
    const double reduced_tol = 1e-12 * cost_scale;
    const std::size_t max_pivots = 100000 + static_cast<std::size_t>(50 * n * k);

    std::vector<std::vector<bool>> is_basic(static_cast<std::size_t>(n),
                                            std::vector<bool>(static_cast<std::size_t>(k), false));
    for (const Cell& c : basis) is_basic[c.row][c.col] = true;

    std::size_t pivots = 0;
    while (true) {
        // Potentials u_i + v_j = c_ij on the basis tree, rooted at row 0.
        const Tree tree(n, k, basis);
        std::vector<double> pot(static_cast<std::size_t>(n + k), 0.0);
        std::vector<bool> done(static_cast<std::size_t>(n + k), false);
        std::deque<Eigen::Index> queue{0};
        done[0] = true;
        while (!queue.empty()) {
            const Eigen::Index u = queue.front();
            queue.pop_front();
            for (const auto& [w, b] : tree.adj[u]) {
                if (done[w]) continue;
                done[w] = true;
                pot[w] = cost(basis[b].row, basis[b].col) - pot[u];
                queue.push_back(w);
            }
        }

        // Bland: first improving non-basic cell in row-major order.
        bool found = false;
        Cell entering{0, 0};
        for (Eigen::Index i = 0; i < n && !found; ++i) {
            for (Eigen::Index j = 0; j < k; ++j) {
                if (is_basic[i][j]) continue;
                const double reduced = cost(i, j) - pot[i] - pot[n + j];
                if (reduced < -reduced_tol) {
                    entering = {i, j};
                    found = true;
                    break;
                }
            }
        }
        if (!found) break;
        if (++pivots > max_pivots) throw Error("solveTransport: pivot limit exceeded");

        // Cycle: entering cell (+), then the tree path row -> column alternating -, +, ...
        const std::vector<std::size_t> path = tree.path(entering.row, n + entering.col);
        double theta = std::numeric_limits<double>::infinity();
        for (std::size_t e = 0; e < path.size(); e += 2) {
            const Cell& c = basis[path[e]];
            theta = std::min(theta, flow(c.row, c.col));
        }
        std::size_t leaving = path[0];
        Eigen::Index leaving_key = std::numeric_limits<Eigen::Index>::max();
        for (std::size_t e = 0; e < path.size(); e += 2) {
            const Cell& c = basis[path[e]];
            const Eigen::Index key = c.row * k + c.col;
            if (flow(c.row, c.col) == theta && key < leaving_key) {
                leaving_key = key;
                leaving = path[e];
            }
        }
        flow(entering.row, entering.col) += theta;
        for (std::size_t e = 0; e < path.size(); ++e) {
            const Cell& c = basis[path[e]];
            if (e % 2 == 0) {
                flow(c.row, c.col) = std::max(0.0, flow(c.row, c.col) - theta);
            } else {
                flow(c.row, c.col) += theta;
            }
        }
        const Cell out = basis[leaving];
        flow(out.row, out.col) = 0.0;
        is_basic[out.row][out.col] = false;
        is_basic[entering.row][entering.col] = true;
        basis[leaving] = entering;
    }

    TransportPlan plan;
    plan.cost = (flow.array() * cost.array()).sum();
    plan.flow = std::move(flow);
    plan.pivots = pivots;
    return plan;
}

FlowResult maxBipartiteFlow(const Eigen::VectorXd& supply, const Eigen::VectorXd& demand,
                            const std::vector<std::vector<bool>>& admissible) {
    const Eigen::Index n = supply.size();
    const Eigen::Index k = demand.size();
    if (static_cast<Eigen::Index>(admissible.size()) != n) {
        throw DimensionError("maxBipartiteFlow: admissibility shape mismatch");
    }
    // Node layout: 0 = source, 1..n rows, n+1..n+k columns, n+k+1 sink.
    const Eigen::Index nodes = n + k + 2;
    const Eigen::Index source = 0;
    const Eigen::Index sink = n + k + 1;
    const double unbounded = supply.sum() + demand.sum() + 1.0;
    Eigen::MatrixXd cap = Eigen::MatrixXd::Zero(nodes, nodes);
    for (Eigen::Index i = 0; i < n; ++i) {
        cap(source, 1 + i) = supply(i);
        if (static_cast<Eigen::Index>(admissible[i].size()) != k) {
            throw DimensionError("maxBipartiteFlow: admissibility shape mismatch");
        }
        for (Eigen::Index j = 0; j < k; ++j) {
            if (admissible[i][j]) cap(1 + i, 1 + n + j) = unbounded;
        }
    }
    for (Eigen::Index j = 0; j < k; ++j) cap(1 + n + j, sink) = demand(j);

    const double eps = 1e-15;
    Eigen::MatrixXd residual = cap;
    double total = 0.0;
    while (true) {
        std::vector<Eigen::Index> parent(static_cast<std::size_t>(nodes), -1);
        parent[source] = source;
        std::deque<Eigen::Index> queue{source};
        while (!queue.empty() && parent[sink] < 0) {
            const Eigen::Index u = queue.front();
            queue.pop_front();
            for (Eigen::Index w = 0; w < nodes; ++w) {
                if (parent[w] < 0 && residual(u, w) > eps) {
                    parent[w] = u;
                    queue.push_back(w);
                }
            }
        }
        if (parent[sink] < 0) break;
        double bottleneck = std::numeric_limits<double>::infinity();
        for (Eigen::Index v = sink; v != source; v = parent[v]) {
            bottleneck = std::min(bottleneck, residual(parent[v], v));
        }
        for (Eigen::Index v = sink; v != source; v = parent[v]) {
            residual(parent[v], v) -= bottleneck;
            residual(v, parent[v]) += bottleneck;
        }
        total += bottleneck;
    }

    FlowResult out;
    out.value = total;
    out.flow = Eigen::MatrixXd::Zero(n, k);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < k; ++j) {
            if (admissible[i][j]) {
                out.flow(i, j) = std::max(0.0, cap(1 + i, 1 + n + j) - residual(1 + i, 1 + n + j));
            }
        }
    }
    return out;
}

}  // namespace cartan::transport
