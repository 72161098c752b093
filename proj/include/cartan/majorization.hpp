#pragma once

// Log-majorization A <_log B and the checks built on it:
//   G(mu^t) <_log G(mu)^t for t >= 1, and
//   G(mu^q)^{1/q} <_log G(mu^p)^{1/p} for 0 < p <= q (with the norm chain).
// All eigenvalue products are compared as sums of logs.

#include "cartan/barycenter.hpp"
#include "cartan/matcore.hpp"
#include "cartan/measure.hpp"

#include <vector>

namespace cartan {

struct MajorizationReport {
    /// Entry k-1: sum_{j<=k} log lambda_j(B) - sum_{j<=k} log lambda_j(A).
    RealVector prefix_log_gaps;
    /// log det B - log det A.
    double det_log_gap = 0.0;
    double tol = 0.0;
    bool holds = false;
};

MajorizationReport logMajorize(const SpdMatrix& a, const SpdMatrix& b, double tol = 1e-8);

struct TheoremCheck {
    double t;
    MajorizationReport report;  // A = G(mu^t), B = G(mu)^t
};

/// One report per t (each t >= 1). Throws BarycenterConvergenceError if a
/// solve fails.
std::vector<TheoremCheck> checkMainTheorem(const DiscreteMeasure& mu, const std::vector<double>& ts,
                                           double tol = 1e-7, const SolverOptions& opts = {});

struct NormComparison {
    NormSpec norm;
    double lhs;  // |||G(mu^q)^{1/q}|||
    double rhs;  // |||G(mu^p)^{1/p}|||
    bool holds;
};

struct CorollaryPair {
    double p;
    double q;
    MajorizationReport majorization;  // A = G(mu^q)^{1/q}, B = G(mu^p)^{1/p}
    std::vector<NormComparison> norms;
};

struct CorollaryReport {
    std::vector<CorollaryPair> pairs;
    bool holds = false;
};

/// Adjacent pairs (p, q) of the ascending grid `ps`.
CorollaryReport checkCorollaryChain(const DiscreteMeasure& mu, const std::vector<double>& ps,
                                    const std::vector<NormSpec>& norms, double tol = 1e-7,
                                    const SolverOptions& opts = {});

}  // namespace cartan
