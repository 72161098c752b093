#pragma once

// Finitely supported probability measures on the positive definite cone.

#include "cartan/matcore.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace cartan {

/// Atoms closer than this (Frobenius distance) are merged by push-forwards.
inline constexpr double kAtomMergeTol = 1e-12;

class DiscreteMeasure {
public:
    /// Zero-weight atoms are dropped. Weights must be positive, finite and sum
    /// to 1 within 1e-12; all atoms must share one dimension.
    DiscreteMeasure(std::vector<SpdMatrix> atoms, std::vector<double> weights);

    static DiscreteMeasure dirac(SpdMatrix atom);
    static DiscreteMeasure uniform(std::vector<SpdMatrix> atoms);
    /// Divides the weights by their sum.
    static DiscreteMeasure normalized(std::vector<SpdMatrix> atoms, std::vector<double> weights);

    std::size_t size() const { return atoms_.size(); }
    std::size_t dim() const { return atoms_.front().dim(); }
    const std::vector<SpdMatrix>& atoms() const { return atoms_; }
    const std::vector<double>& weights() const { return weights_; }
    const SpdMatrix& atom(std::size_t i) const { return atoms_[i]; }
    double weight(std::size_t i) const { return weights_[i]; }
    Eigen::VectorXd weightVector() const;

    /// Same measure with atoms within kAtomMergeTol collapsed (first occurrence
    /// keeps its position, weights summed).
    DiscreteMeasure merged() const;

private:
    std::vector<SpdMatrix> atoms_;
    std::vector<double> weights_;
};

/// Joint weights over atom pairs with the two measures as marginals.
class Coupling {
public:
    /// Row and column sums must match the marginals within 1e-10.
    Coupling(DiscreteMeasure rows, DiscreteMeasure cols, Eigen::MatrixXd mass);

    const DiscreteMeasure& rowMeasure() const { return rows_; }
    const DiscreteMeasure& colMeasure() const { return cols_; }
    const Eigen::MatrixXd& mass() const { return mass_; }

private:
    DiscreteMeasure rows_;
    DiscreteMeasure cols_;
    Eigen::MatrixXd mass_;
};

using SpdMap = std::function<SpdMatrix(const SpdMatrix&)>;

DiscreteMeasure pushforward(const DiscreteMeasure& mu, const SpdMap& map);

/// mu^t, the push-forward under X -> X^t. t must be non-zero.
DiscreteMeasure powerMeasure(const DiscreteMeasure& mu, double t);

enum class TruncationAnchor { Low, High, Identity };

/// Keeps atoms with (1/n) I <= X <= n I and moves the remaining mass to
/// (1/n) I, n I or I. Requires n > 1.
DiscreteMeasure truncate(const DiscreteMeasure& mu, double n, TruncationAnchor anchor);

struct WassersteinResult {
    double distance;
    Coupling coupling;
};

/// p-Wasserstein distance for the trace metric with an optimal coupling.
WassersteinResult wasserstein(const DiscreteMeasure& mu, const DiscreteMeasure& nu, double p);

/// lambda_min(B - A) >= -tol * (1 + ||B||).
bool loewnerLeq(const SpdMatrix& a, const SpdMatrix& b, double tol = 1e-9);

struct StochasticOrderResult {
    bool holds = false;
    std::optional<Coupling> witness;
};

/// mu <= nu decided as existence of a coupling supported on pairs with
/// lambda_min(Y_j - X_i) >= -tol (max-flow feasibility).
StochasticOrderResult stochasticLeq(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                                    double tol = 1e-9);

SpdMatrix arithmeticMean(const DiscreteMeasure& mu);
SpdMatrix harmonicMean(const DiscreteMeasure& mu);
HermitianMatrix logMean(const DiscreteMeasure& mu);

}  // namespace cartan
