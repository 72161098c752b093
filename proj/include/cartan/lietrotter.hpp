#pragma once

// Lie-Trotter limit G(mu^t)^{1/t} -> exp(integral of log X) as t -> 0, the
// matrix power means that sandwich it, and integrability diagnostics.

#include "cartan/barycenter.hpp"
#include "cartan/matcore.hpp"
#include "cartan/measure.hpp"

#include <map>
#include <vector>

namespace cartan {

/// exp(sum_j w_j log X_j).
SpdMatrix lieTrotterTarget(const DiscreteMeasure& mu);

struct TrotterCurve {
    std::vector<double> ts;
    std::vector<SpdMatrix> points;  // G(mu^t)^{1/t}
    std::vector<double> distances;  // d(point, target)
    SpdMatrix target;
};

class TrotterCurveError : public BarycenterConvergenceError {
public:
    TrotterCurveError(BarycenterResult best, double t, TrotterCurve partial);
    double failedT() const { return t_; }
    const TrotterCurve& partial() const { return partial_; }

private:
    double t_;
    TrotterCurve partial_;
};

/// For each t (non-zero, negative allowed) solves G(mu^t) with the residual
/// tolerance scaled by min(1, |t|), then raises it to 1/t.
TrotterCurve lieTrotterCurve(const DiscreteMeasure& mu, const std::vector<double>& ts,
                             const SolverOptions& opts = {});

/// Scaling X -> X / det(X)^{1/m} applied to every atom.
DiscreteMeasure determinantNormalized(const DiscreteMeasure& mu);

/// (sum_j w_j X_j^t)^{1/t}; t = 1 is the arithmetic mean, t = -1 the harmonic.
SpdMatrix powerMean(const DiscreteMeasure& mu, double t);

struct PowerMeanPoint {
    double t;
    SpdMatrix point;
};

std::vector<PowerMeanPoint> powerMeanCurve(const DiscreteMeasure& mu, const std::vector<double>& ts);

struct PowerMeanOrderCheck {
    double t_small;  // t'
    double t_large;  // t
    double upper_gap;  // lambda_min((int X^t)^{t'/t} - int X^{t'})
    double lower_gap;  // lambda_min((int X^{-t'})^{-1} - (int X^{-t})^{-t'/t})
    bool holds;
};

/// For every pair 0 < t' < t of the grid:
///   int X^{t'} <= (int X^t)^{t'/t}  and  (int X^{-t'})^{-1} >= (int X^{-t})^{-t'/t}.
std::vector<PowerMeanOrderCheck> checkPowerMeanOrder(const DiscreteMeasure& mu,
                                                     const std::vector<double>& ts,
                                                     double tol = 1e-9);

struct SandwichPoint {
    double t;
    double lower;   // |||(int X^{-t})^{-1/t}|||
    double middle;  // |||G(mu^t)^{1/t}|||
    double upper;   // |||(int X^t)^{1/t}|||
    bool norms_ordered;
    bool loewner_outer;  // (int X^{-t})^{-1} <= G(mu^t) <= int X^t
};

struct SandwichReport {
    NormSpec norm;
    double target_norm;
    std::vector<SandwichPoint> points;
    bool ordered = false;    // every point's norm sandwich holds
    bool monotone = false;   // lower and middle nondecreasing, upper nonincreasing as t decreases
    bool loewner = false;    // every point's Loewner sandwich holds
    bool holds = false;
};

/// ts must be positive and strictly descending.
SandwichReport sandwichCheck(const DiscreteMeasure& mu, const std::vector<double>& ts,
                             const NormSpec& spec, double tol = 1e-9,
                             const SolverOptions& opts = {});

struct IntegrabilityProfile {
    std::map<double, double> moment;      // r -> int (||X|| + ||X^{-1}||)^r
    std::map<double, double> log_moment;  // p -> int ||log X||_F^p
    /// max over atoms of ||log X|| - log(||X|| + ||X^{-1}||) (operator norms); <= 0 expected.
    double log_bound_slack = 0.0;
    bool log_bound_holds = false;
    /// p -> (sqrt(m) p / e)^p * int (||X|| + ||X^{-1}||), the bound on log_moment[p].
    std::map<double, double> log_moment_bound;
    bool moment_bound_holds = false;
};

IntegrabilityProfile integrabilityProfile(const DiscreteMeasure& mu, const std::vector<double>& rs,
                                          const std::vector<double>& ps);

/// First N atoms of sum_n 2^{-n} delta_{X_n}, X_n = diag(n^n, 1, ..., 1) >= I,
/// with the tail mass 2^{-N} placed on X_1 = I.
DiscreteMeasure heavyTailTruncation(std::size_t m, std::size_t n_atoms);

/// Least-squares slope of log(distance) against log(t).
double logLogSlope(const std::vector<double>& ts, const std::vector<double>& distances);

}  // namespace cartan
