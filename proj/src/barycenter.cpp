#include "cartan/barycenter.hpp"

#include <cmath>
#include <sstream>

namespace cartan {

namespace {

constexpr int kMaxHalvings = 20;

struct Iterate {
    SpdMatrix point;
    HermitianMatrix residual;
    double residual_norm;  // absolute Frobenius norm
    double relative;
    double step_hint;  // curvature-adapted step for the next move
};

// Residual plus the step 2 / sum_j w_j h(c_j), h(c) = (c + 1) / (c - 1) log c,
// where c_j is the condition number of the whitened atom Z^{-1/2} X_j Z^{-1/2}
// (h(1) = 2 by continuity). Equals 1 when all atoms sit at Z.
Iterate evaluate(SpdMatrix z, const DiscreteMeasure& mu) {
    HermitianMatrix r = HermitianMatrix::zero(z.dim());
    double curvature = 0.0;
    for (std::size_t i = 0; i < mu.size(); ++i) {
        const SpdMatrix w = symmetricProduct(z, -0.5, mu.atom(i));
        r += mu.weight(i) * logm(w);
        const double log_c = std::log(w.lambdaMax() / w.lambdaMin());
        curvature += mu.weight(i) * (log_c < 1e-8 ? 2.0 : log_c / std::tanh(0.5 * log_c));
    }
    const double abs_norm = r.frobeniusNorm();
    const double scale = 1.0 + logm(z).frobeniusNorm();
    return {std::move(z), std::move(r), abs_norm, abs_norm / scale, 2.0 / curvature};
}

SpdMatrix initialPoint(const DiscreteMeasure& mu, const SolverOptions& opts) {
    switch (opts.init) {
        case InitKind::LogMean: return expm(logMean(mu));
        case InitKind::Arithmetic: return arithmeticMean(mu);
        case InitKind::Explicit:
            requireSameDim(opts.init_point->dim(), mu.dim(), "cartanBarycenter");
            return *opts.init_point;
    }
    return expm(logMean(mu));
}

}  // namespace

SolverOptions SolverOptions::explicitInit(SpdMatrix start) {
    SolverOptions opts;
    opts.init = InitKind::Explicit;
    opts.init_point = std::move(start);
    return opts;
}

void SolverOptions::validate() const {
    if (!(residual_tol > 0.0)) throw DomainError("SolverOptions: residual_tol must be > 0");
    if (max_iter < 1) throw DomainError("SolverOptions: max_iter must be >= 1");
    if (!(step > 0.0 && step <= 1.0)) throw DomainError("SolverOptions: step must lie in (0, 1]");
    if (init == InitKind::Explicit && !init_point) {
        throw DomainError("SolverOptions: explicit init requires init_point");
    }
}

BarycenterConvergenceError::BarycenterConvergenceError(BarycenterResult best)
    : Error([&] {
          std::ostringstream os;
          os << "cartanBarycenter: no convergence after " << best.iterations
             << " iterations (relative residual " << best.relative_residual << ")";
          return os.str();
      }()),
      best_(std::move(best)) {}

HermitianMatrix karcherResidual(const SpdMatrix& z, const DiscreteMeasure& mu) {
    requireSameDim(z.dim(), mu.dim(), "karcherResidual");
    HermitianMatrix acc = HermitianMatrix::zero(z.dim());
    for (std::size_t i = 0; i < mu.size(); ++i) {
        acc += mu.weight(i) * logm(symmetricProduct(z, -0.5, mu.atom(i)));
    }
    return acc;
}

double relativeResidual(const SpdMatrix& z, const DiscreteMeasure& mu) {
    return karcherResidual(z, mu).frobeniusNorm() / (1.0 + logm(z).frobeniusNorm());
}

double karcherObjective(const SpdMatrix& z, const DiscreteMeasure& mu) {
    double acc = 0.0;
    for (std::size_t i = 0; i < mu.size(); ++i) {
        const double d = traceMetric(z, mu.atom(i));
        acc += mu.weight(i) * d * d;
    }
    return acc;
}

BarycenterResult cartanBarycenter(const DiscreteMeasure& mu, const SolverOptions& opts) {
    opts.validate();
    if (mu.size() == 1) return {mu.atom(0), 0.0, 0.0, 0, true};

    Iterate cur = evaluate(initialPoint(mu, opts), mu);
    int iter = 0;
    while (cur.relative > opts.residual_tol) {
        if (iter >= opts.max_iter) return {cur.point, cur.residual_norm, cur.relative, iter, false};
        double step = std::min(opts.step, cur.step_hint);
        bool accepted = false;
        for (int h = 0; h <= kMaxHalvings; ++h, step *= 0.5) {
            try {
                Iterate next =
                    evaluate(symmetricProduct(cur.point, 0.5, expm(step * cur.residual)), mu);
                if (next.residual_norm < cur.residual_norm) {
                    cur = std::move(next);
                    accepted = true;
                    break;
                }
            } catch (const NotPositiveDefinite&) {
                // Overshoot left the cone numerically; retry with a shorter step.
            }
        }
        ++iter;
        // Stagnation: no step size reduces the residual any further.
        if (!accepted) return {cur.point, cur.residual_norm, cur.relative, iter, false};
    }
    return {cur.point, cur.residual_norm, cur.relative, iter, true};
}

SpdMatrix barycenterPoint(const DiscreteMeasure& mu, const SolverOptions& opts) {
    BarycenterResult r = cartanBarycenter(mu, opts);
    if (!r.converged) throw BarycenterConvergenceError(std::move(r));
    return r.point;
}

double barycenter1d(const std::vector<ScalarAtom>& nu) {
    if (nu.empty()) throw DomainError("barycenter1d: empty measure");
    double total = 0.0;
    double acc = 0.0;
    for (const ScalarAtom& a : nu) {
        if (!(a.value > 0.0) || !std::isfinite(a.value)) {
            throw DomainError("barycenter1d: atoms must be positive and finite");
        }
        if (!(a.weight >= 0.0)) throw DomainError("barycenter1d: negative weight");
        total += a.weight;
        acc += a.weight * std::log(a.value);
    }
    if (std::abs(total - 1.0) > 1e-12) throw DomainError("barycenter1d: weights must sum to 1");
    return std::exp(acc);
}

AghReport aghCheck(const DiscreteMeasure& mu, double tol, const SolverOptions& opts) {
    const SpdMatrix g = barycenterPoint(mu, opts);
    const SpdMatrix h = harmonicMean(mu);
    const SpdMatrix a = arithmeticMean(mu);
    AghReport out;
    out.harmonic_leq_g = loewnerLeq(h, g, tol);
    out.g_leq_arithmetic = loewnerLeq(g, a, tol);
    out.harmonic_gap = lambdaMin(g.hermitian() - h.hermitian());
    out.arithmetic_gap = lambdaMin(a.hermitian() - g.hermitian());
    return out;
}

}  // namespace cartan
