#include "cartan/lietrotter.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace cartan {

namespace {

// a <= b up to tol, scaled by the magnitude of b once it exceeds 1.
bool leqWithin(double a, double b, double tol) {
    return a <= b + tol * std::max(1.0, std::abs(b));
}

SolverOptions scaledOptions(const SolverOptions& opts, double t) {
    SolverOptions out = opts;
    out.residual_tol = opts.residual_tol * std::min(1.0, std::abs(t));
    return out;
}

HermitianMatrix weightedPowerSum(const DiscreteMeasure& mu, double t) {
    HermitianMatrix acc = HermitianMatrix::zero(mu.dim());
    for (std::size_t i = 0; i < mu.size(); ++i) acc += mu.weight(i) * powm(mu.atom(i), t).hermitian();
    return acc;
}

}  // namespace

SpdMatrix lieTrotterTarget(const DiscreteMeasure& mu) { return expm(logMean(mu)); }

TrotterCurveError::TrotterCurveError(BarycenterResult best, double t, TrotterCurve partial)
    : BarycenterConvergenceError(std::move(best)), t_(t), partial_(std::move(partial)) {}

TrotterCurve lieTrotterCurve(const DiscreteMeasure& mu, const std::vector<double>& ts,
                             const SolverOptions& opts) {
    TrotterCurve curve{{}, {}, {}, lieTrotterTarget(mu)};
    for (double t : ts) {
        if (t == 0.0 || !std::isfinite(t)) throw DomainError("lieTrotterCurve: t must be non-zero");
    }
    for (double t : ts) {
        BarycenterResult r = cartanBarycenter(powerMeasure(mu, t), scaledOptions(opts, t));
        if (!r.converged) throw TrotterCurveError(std::move(r), t, curve);
        SpdMatrix point = powm(r.point, 1.0 / t);
        curve.ts.push_back(t);
        curve.distances.push_back(traceMetric(point, curve.target));
        curve.points.push_back(std::move(point));
    }
    return curve;
}

DiscreteMeasure determinantNormalized(const DiscreteMeasure& mu) {
    const double m = static_cast<double>(mu.dim());
    return pushforward(mu, [m](const SpdMatrix& x) {
        const double scale = std::exp(-x.logDet() / m);
        return positiveMatrixFunction(x, [scale](double v) { return v * scale; });
    });
}

SpdMatrix powerMean(const DiscreteMeasure& mu, double t) {
    if (t == 0.0) throw DomainError("powerMean: t must be non-zero");
    return powm(SpdMatrix(weightedPowerSum(mu, t)), 1.0 / t);
}

std::vector<PowerMeanPoint> powerMeanCurve(const DiscreteMeasure& mu, const std::vector<double>& ts) {
    std::vector<PowerMeanPoint> out;
    out.reserve(ts.size());
    for (double t : ts) out.push_back({t, powerMean(mu, t)});
    return out;
}

std::vector<PowerMeanOrderCheck> checkPowerMeanOrder(const DiscreteMeasure& mu,
                                                     const std::vector<double>& ts, double tol) {
    std::vector<double> grid = ts;
    for (double t : grid) {
        if (!(t > 0.0)) throw DomainError("checkPowerMeanOrder: grid must be positive");
    }
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

    std::vector<PowerMeanOrderCheck> out;
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
        const double small = grid[i];
        const double large = grid[i + 1];
        const double ratio = small / large;
        const SpdMatrix pos_small(weightedPowerSum(mu, small));
        const SpdMatrix pos_large(weightedPowerSum(mu, large));
        const SpdMatrix upper = powm(pos_large, ratio);
        const SpdMatrix neg_small = inverse(SpdMatrix(weightedPowerSum(mu, -small)));
        const SpdMatrix neg_large = powm(SpdMatrix(weightedPowerSum(mu, -large)), -ratio);
        PowerMeanOrderCheck c;
        c.t_small = small;
        c.t_large = large;
        c.upper_gap = lambdaMin(upper.hermitian() - pos_small.hermitian());
        c.lower_gap = lambdaMin(neg_small.hermitian() - neg_large.hermitian());
        c.holds = loewnerLeq(pos_small, upper, tol) && loewnerLeq(neg_large, neg_small, tol);
        out.push_back(c);
    }
    return out;
}

SandwichReport sandwichCheck(const DiscreteMeasure& mu, const std::vector<double>& ts,
                             const NormSpec& spec, double tol, const SolverOptions& opts) {
    for (std::size_t i = 0; i < ts.size(); ++i) {
        if (!(ts[i] > 0.0)) throw DomainError("sandwichCheck: grid must be positive");
        if (i > 0 && !(ts[i] < ts[i - 1])) {
            throw DomainError("sandwichCheck: grid must be strictly descending");
        }
    }
    SandwichReport out{spec, norm(lieTrotterTarget(mu), spec), {}, true, true, true, false};
    for (double t : ts) {
        const DiscreteMeasure mu_t = powerMeasure(mu, t);
        const SpdMatrix g = barycenterPoint(mu_t, scaledOptions(opts, t));
        const SpdMatrix harmonic = harmonicMean(mu_t);
        const SpdMatrix arithmetic = arithmeticMean(mu_t);
        SandwichPoint p;
        p.t = t;
        p.lower = norm(powm(harmonic, 1.0 / t), spec);
        p.middle = norm(powm(g, 1.0 / t), spec);
        p.upper = norm(powm(arithmetic, 1.0 / t), spec);
        p.norms_ordered = leqWithin(p.lower, p.middle, tol) &&
                          leqWithin(p.middle, out.target_norm, tol) &&
                          leqWithin(out.target_norm, p.upper, tol);
        p.loewner_outer = loewnerLeq(harmonic, g, tol) && loewnerLeq(g, arithmetic, tol);
        if (!out.points.empty()) {
            const SandwichPoint& prev = out.points.back();
            out.monotone = out.monotone && leqWithin(prev.lower, p.lower, tol) &&
                           leqWithin(prev.middle, p.middle, tol) &&
                           leqWithin(p.upper, prev.upper, tol);
        }
        out.ordered = out.ordered && p.norms_ordered;
        out.loewner = out.loewner && p.loewner_outer;
        out.points.push_back(p);
    }
    out.holds = out.ordered && out.monotone && out.loewner;
    return out;
}

IntegrabilityProfile integrabilityProfile(const DiscreteMeasure& mu, const std::vector<double>& rs,
                                          const std::vector<double>& ps) {
    const double m = static_cast<double>(mu.dim());
    IntegrabilityProfile out;
    out.log_bound_slack = -std::numeric_limits<double>::infinity();
    std::vector<double> spread(mu.size());  // ||X|| + ||X^{-1}||
    std::vector<double> log_frob(mu.size());
    for (std::size_t i = 0; i < mu.size(); ++i) {
        const SpdMatrix& x = mu.atom(i);
        const double hi = x.lambdaMax();
        const double lo = x.lambdaMin();
        spread[i] = hi + 1.0 / lo;
        const double log_op = std::max(std::abs(std::log(hi)), std::abs(std::log(lo)));
        out.log_bound_slack = std::max(out.log_bound_slack, log_op - std::log(spread[i]));
        log_frob[i] = x.eigen().values.array().log().matrix().norm();
    }
    out.log_bound_holds = out.log_bound_slack <= 1e-10;

    auto moment = [&](double r) {
        double acc = 0.0;
        for (std::size_t i = 0; i < mu.size(); ++i) acc += mu.weight(i) * std::pow(spread[i], r);
        return acc;
    };
    for (double r : rs) out.moment[r] = moment(r);
    const double first_moment = moment(1.0);
    out.moment_bound_holds = true;
    for (double p : ps) {
        if (!(p > 0.0)) throw DomainError("integrabilityProfile: p must be positive");
        double acc = 0.0;
        for (std::size_t i = 0; i < mu.size(); ++i) acc += mu.weight(i) * std::pow(log_frob[i], p);
        out.log_moment[p] = acc;
        const double c = std::sqrt(m) * p / std::numbers::e;
        const double bound = std::pow(c, p) * first_moment;
        out.log_moment_bound[p] = bound;
        out.moment_bound_holds = out.moment_bound_holds && acc <= bound * (1.0 + 1e-12);
    }
    return out;
}

DiscreteMeasure heavyTailTruncation(std::size_t m, std::size_t n_atoms) {
    if (m == 0 || n_atoms == 0) throw DomainError("heavyTailTruncation: empty shape");
    std::vector<SpdMatrix> atoms;
    std::vector<double> weights;
    for (std::size_t n = 1; n <= n_atoms; ++n) {
        RealVector diag = RealVector::Ones(static_cast<Eigen::Index>(m));
        const double nd = static_cast<double>(n);
        diag(0) = std::pow(nd, nd);
        atoms.push_back(SpdMatrix::diagonal(diag, 0.0));
        weights.push_back(std::ldexp(1.0, -static_cast<int>(n)));
    }
    weights.front() += std::ldexp(1.0, -static_cast<int>(n_atoms));
    return DiscreteMeasure(std::move(atoms), std::move(weights));
}

double logLogSlope(const std::vector<double>& ts, const std::vector<double>& distances) {
    if (ts.size() != distances.size() || ts.size() < 2) {
        throw DomainError("logLogSlope: need at least two matching points");
    }
    const auto n = static_cast<double>(ts.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < ts.size(); ++i) {
        if (!(distances[i] > 0.0)) throw DomainError("logLogSlope: distances must be positive");
        const double x = std::log(std::abs(ts[i]));
        const double y = std::log(distances[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace cartan
