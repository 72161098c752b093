#include "cartan/majorization.hpp"

#include <cmath>

namespace cartan {

MajorizationReport logMajorize(const SpdMatrix& a, const SpdMatrix& b, double tol) {
    requireSameDim(a.dim(), b.dim(), "logMajorize");
    const RealVector& la = a.eigen().values;
    const RealVector& lb = b.eigen().values;
    const Eigen::Index m = la.size();
    MajorizationReport out;
    out.tol = tol;
    out.prefix_log_gaps.resize(m);
    double acc = 0.0;
    bool prefixes_ok = true;
    for (Eigen::Index k = 0; k < m; ++k) {
        acc += std::log(lb(k)) - std::log(la(k));
        out.prefix_log_gaps(k) = acc;
        if (acc < -tol) prefixes_ok = false;
    }
    out.det_log_gap = acc;
    out.holds = prefixes_ok && std::abs(out.det_log_gap) <= tol;
    return out;
}

std::vector<TheoremCheck> checkMainTheorem(const DiscreteMeasure& mu, const std::vector<double>& ts,
                                           double tol, const SolverOptions& opts) {
    for (double t : ts) {
        if (!(t >= 1.0)) throw DomainError("checkMainTheorem: every t must be >= 1");
    }
    const SpdMatrix g = barycenterPoint(mu, opts);
    std::vector<TheoremCheck> out;
    out.reserve(ts.size());
    for (double t : ts) {
        const SpdMatrix lhs = barycenterPoint(powerMeasure(mu, t), opts);
        out.push_back({t, logMajorize(lhs, powm(g, t), tol)});
    }
    return out;
}

CorollaryReport checkCorollaryChain(const DiscreteMeasure& mu, const std::vector<double>& ps,
                                    const std::vector<NormSpec>& norms, double tol,
                                    const SolverOptions& opts) {
    for (std::size_t i = 0; i < ps.size(); ++i) {
        if (!(ps[i] > 0.0)) throw DomainError("checkCorollaryChain: grid must be positive");
        if (i > 0 && ps[i] < ps[i - 1]) {
            throw DomainError("checkCorollaryChain: grid must be ascending");
        }
    }
    std::vector<SpdMatrix> curve;
    curve.reserve(ps.size());
    for (double p : ps) curve.push_back(powm(barycenterPoint(powerMeasure(mu, p), opts), 1.0 / p));

    CorollaryReport out;
    out.holds = true;
    for (std::size_t i = 0; i + 1 < ps.size(); ++i) {
        CorollaryPair pair{ps[i], ps[i + 1], logMajorize(curve[i + 1], curve[i], tol), {}};
        out.holds = out.holds && pair.majorization.holds;
        for (const NormSpec& spec : norms) {
            const double lhs = norm(curve[i + 1], spec);
            const double rhs = norm(curve[i], spec);
            const bool ok = lhs <= rhs + tol;
            pair.norms.push_back({spec, lhs, rhs, ok});
            out.holds = out.holds && ok;
        }
        out.pairs.push_back(std::move(pair));
    }
    return out;
}

}  // namespace cartan
