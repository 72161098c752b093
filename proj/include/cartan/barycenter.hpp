#pragma once

// Cartan barycenter (Karcher mean) of a discrete measure on the positive
// definite cone, computed as the zero of the Karcher equation
//
//     sum_j w_j log(Z^{-1/2} X_j Z^{-1/2}) = 0.

#include "cartan/matcore.hpp"
#include "cartan/measure.hpp"

#include <optional>
#include <vector>

namespace cartan {

enum class InitKind { LogMean, Arithmetic, Explicit };

struct SolverOptions {
    double residual_tol = 1e-10;
    int max_iter = 1000;
    double step = 1.0;
    InitKind init = InitKind::LogMean;
    std::optional<SpdMatrix> init_point;  // used when init == Explicit

    static SolverOptions explicitInit(SpdMatrix start);
    /// Throws DomainError on an invalid combination.
    void validate() const;
};

struct BarycenterResult {
    SpdMatrix point;
    double residual_norm;      // ||R(Z)||_F
    double relative_residual;  // ||R(Z)||_F / (1 + ||log Z||_F)
    int iterations;
    bool converged;
};

class BarycenterConvergenceError : public Error {
public:
    explicit BarycenterConvergenceError(BarycenterResult best);
    const BarycenterResult& best() const { return best_; }

private:
    BarycenterResult best_;
};

/// sum_j w_j log(Z^{-1/2} X_j Z^{-1/2}); vanishes exactly at the barycenter.
HermitianMatrix karcherResidual(const SpdMatrix& z, const DiscreteMeasure& mu);

/// ||R(Z)||_F / (1 + ||log Z||_F), the stopping quantity of the solver.
double relativeResidual(const SpdMatrix& z, const DiscreteMeasure& mu);

/// sum_j w_j d^2(Z, X_j).
double karcherObjective(const SpdMatrix& z, const DiscreteMeasure& mu);

/// Riemannian fixed-point iteration Z <- Z^{1/2} exp(s R(Z)) Z^{1/2}. Each
/// iteration starts from s = min(opts.step, 2 / sum_j w_j h(c_j)) with
/// h(c) = log c / tanh(log(c) / 2), c_j the condition number of the whitened
/// atom, and halves s (at most 20 times) until the residual norm decreases.
/// Never throws on non-convergence: the last iterate is returned with
/// converged = false (iteration cap or stagnation).
BarycenterResult cartanBarycenter(const DiscreteMeasure& mu, const SolverOptions& opts = {});

/// Like cartanBarycenter but throws BarycenterConvergenceError on failure.
SpdMatrix barycenterPoint(const DiscreteMeasure& mu, const SolverOptions& opts = {});

struct ScalarAtom {
    double weight;
    double value;
};

/// Barycenter on (0, inf): exp(sum w log x).
double barycenter1d(const std::vector<ScalarAtom>& nu);

struct AghReport {
    bool harmonic_leq_g;
    bool g_leq_arithmetic;
    double harmonic_gap;    // lambda_min(G - H)
    double arithmetic_gap;  // lambda_min(A - G)
};

/// Harmonic <= barycenter <= arithmetic in the Loewner order.
AghReport aghCheck(const DiscreteMeasure& mu, double tol = 1e-8, const SolverOptions& opts = {});

}  // namespace cartan
