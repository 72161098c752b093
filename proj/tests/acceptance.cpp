// Acceptance run: twelve criteria, one PASS/FAIL line each. Exit status is the
// number of failed criteria (0 when everything passes).

#include "cartan/barycenter.hpp"
#include "cartan/lietrotter.hpp"
#include "cartan/majorization.hpp"
#include "cartan/random.hpp"
#include "cartan/tensorext.hpp"
#include "oracles.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <string>
#include <vector>

using namespace cartan;

namespace {

constexpr std::uint64_t kSeed = 20240601;

// Largest (measured - allowed) seen; the criterion fails if it is ever > 0 or
// if a trial throws.
struct Tally {
    double worst = -std::numeric_limits<double>::infinity();
    int checks = 0;
    int failures = 0;
    std::string first_failure;

    void check(double measured, double allowed, const std::string& what) {
        ++checks;
        const double excess = measured - allowed;
        if (!(excess <= 0.0)) {
            ++failures;
            if (first_failure.empty()) first_failure = what;
        }
        worst = std::max(worst, std::isnan(excess) ? std::numeric_limits<double>::infinity() : excess);
    }
    void require(bool ok, const std::string& what) {
        if (ok) {
            ++checks;
            return;
        }
        check(std::numeric_limits<double>::infinity(), 0.0, what);
    }
};

struct Criterion {
    int id;
    const char* name;
    std::function<void(Tally&)> run;
};

Rng rngFor(int criterion, int trial) {
    return Rng(kSeed ^ (static_cast<std::uint64_t>(criterion) << 32) ^ static_cast<std::uint64_t>(trial));
}

// m in {2, 3, 4}, 2..8 atoms, kappa in {1e2, 1e3, 1e4}.
MeasureShape shapeFor(int trial) {
    const double kappas[] = {1e2, 1e3, 1e4};
    return {static_cast<std::size_t>(2 + trial % 3), static_cast<std::size_t>(2 + trial % 7),
            kappas[(trial / 3) % 3]};
}

std::string at(int trial) { return "trial " + std::to_string(trial); }

SolverOptions acceptanceSolver() {
    SolverOptions o;
    o.max_iter = 300;
    return o;
}

// 1. Solver soundness.
void solverSoundness(Tally& t) {
    for (int trial = 0; trial < 100; ++trial) {
        Rng rng = rngFor(1, trial);
        const DiscreteMeasure mu = randomMeasure(rng, shapeFor(trial));
        const BarycenterResult r = cartanBarycenter(mu, acceptanceSolver());
        t.require(r.converged, at(trial) + ": not converged");
        t.check(relativeResidual(r.point, mu), 1e-10, at(trial) + ": residual");
        t.check(r.iterations, 300, at(trial) + ": iterations");

        const SpdMatrix a = randomSpd(rng, shapeFor(trial).m, 1e4);
        const SpdMatrix g = barycenterPoint(DiscreteMeasure::dirac(a), acceptanceSolver());
        t.check(maxAbsDiff(g.entries(), a.entries()), 1e-12, at(trial) + ": Dirac");
    }
}

// 2. Two-point consistency with the weighted geometric mean.
void twoPoint(Tally& t) {
    for (int trial = 0; trial < 100; ++trial) {
        Rng rng = rngFor(2, trial);
        const MeasureShape s = shapeFor(trial);
        const SpdMatrix a = randomSpd(rng, s.m, s.kappa);
        const SpdMatrix b = randomSpd(rng, s.m, s.kappa);
        for (int i = 1; i <= 9; ++i) {
            const double alpha = i / 10.0;
            const DiscreteMeasure mu({a, b}, {1.0 - alpha, alpha});
            t.check(traceMetric(barycenterPoint(mu), geodesic(a, b, alpha)), 1e-8,
                    at(trial) + " alpha " + std::to_string(alpha));
        }
    }
}

// 3. Contraction against W1, and W1 <= W2.
void contraction(Tally& t) {
    for (int trial = 0; trial < 100; ++trial) {
        Rng rng = rngFor(3, trial);
        const MeasureShape s = shapeFor(trial);
        MeasureShape s2 = s;
        s2.atoms = 2 + (trial * 5) % 7;
        const DiscreteMeasure mu = randomMeasure(rng, s);
        const DiscreteMeasure nu = randomMeasure(rng, s2);
        const double d = traceMetric(barycenterPoint(mu), barycenterPoint(nu));
        const double w1 = wasserstein(mu, nu, 1.0).distance;
        const double w2 = wasserstein(mu, nu, 2.0).distance;
        t.check(d, w1 + 1e-7, at(trial) + ": contraction");
        t.check(w1, w2 + 1e-9, at(trial) + ": W1 <= W2");
    }
}

// 4. Monotonicity along the stochastic order. nu moves every atom of mu up by
// a random positive semidefinite matrix, splitting its mass over two images.
void monotonicity(Tally& t) {
    for (int trial = 0; trial < 100; ++trial) {
        Rng rng = rngFor(4, trial);
        const MeasureShape s = shapeFor(trial);
        const DiscreteMeasure mu = randomMeasure(rng, s);
        std::vector<SpdMatrix> atoms;
        std::vector<double> weights;
        for (std::size_t i = 0; i < mu.size(); ++i) {
            const double split = rng.uniform(0.2, 0.8);
            for (double part : {split, 1.0 - split}) {
                Matrix p(s.m, s.m);
                for (Eigen::Index r = 0; r < p.rows(); ++r) {
                    for (Eigen::Index c = 0; c < p.cols(); ++c) p(r, c) = {rng.normal(), rng.normal()};
                }
                const double scale = rng.uniform(0.0, 1.0) * mu.atom(i).lambdaMax();
                atoms.emplace_back(Matrix(mu.atom(i).entries() + scale * p * p.adjoint() / static_cast<double>(s.m)));
                weights.push_back(mu.weight(i) * part);
            }
        }
        for (std::size_t i = atoms.size(); i > 1; --i) {
            const std::size_t j = rng.index(i);
            std::swap(atoms[i - 1], atoms[j]);
            std::swap(weights[i - 1], weights[j]);
        }
        const DiscreteMeasure nu = DiscreteMeasure::normalized(std::move(atoms), std::move(weights));
        t.require(stochasticLeq(mu, nu).holds, at(trial) + ": no order witness");
        const double gap = lambdaMin(barycenterPoint(nu).hermitian() - barycenterPoint(mu).hermitian());
        t.check(-gap, 1e-8, at(trial) + ": lambda_min(G(nu) - G(mu))");
    }
}

// 5. Log-majorization and the determinant identity.
void logMajorization(Tally& t) {
    const std::vector<double> ts{1.5, 2.0, 3.0};
    for (int trial = 0; trial < 100; ++trial) {
        Rng rng = rngFor(5, trial);
        const DiscreteMeasure mu = randomMeasure(rng, shapeFor(trial));
        for (const TheoremCheck& c : checkMainTheorem(mu, ts, 1e-7)) {
            const std::string where = at(trial) + " t " + std::to_string(c.t);
            t.check(-c.report.prefix_log_gaps.minCoeff(), 1e-7, where + ": prefix gap");
            t.check(std::abs(c.report.det_log_gap), 1e-7, where + ": det gap");
        }
    }
}

// 6. Compound of the barycenter equals the barycenter of the compound push-forward.
void commutingDiagram(Tally& t) {
    for (int trial = 0; trial < 50; ++trial) {
        Rng rng = rngFor(6, trial);
        const DiscreteMeasure mu = randomMeasure(rng, shapeFor(trial));
        for (std::size_t k = 1; k <= mu.dim(); ++k) {
            t.check(verifyCommutingDiagram(mu, k, 1e-7).distance, 1e-7,
                    at(trial) + " k " + std::to_string(k));
        }
    }
}

// 7. Lipschitz bound for compounds, pointwise and for push-forwards.
void lipschitz(Tally& t) {
    for (int trial = 0; trial < 200; ++trial) {
        Rng rng = rngFor(7, trial);
        const MeasureShape s = shapeFor(trial);
        const SpdMatrix a = randomSpd(rng, s.m, s.kappa);
        const SpdMatrix b = randomSpd(rng, s.m, s.kappa);
        const double d = traceMetric(a, b);
        for (std::size_t k = 1; k <= s.m; ++k) {
            t.check(traceMetric(compound(a, k), compound(b, k)), lipschitzBound(s.m, k) * d + 1e-9,
                    at(trial) + " k " + std::to_string(k));
        }
    }
    for (int trial = 0; trial < 50; ++trial) {
        Rng rng = rngFor(7, 1000 + trial);
        const MeasureShape s = shapeFor(trial);
        const DiscreteMeasure mu = randomMeasure(rng, s);
        const DiscreteMeasure nu = randomMeasure(rng, s);
        for (std::size_t k = 1; k <= s.m; ++k) {
            const double lk = lipschitzBound(s.m, k);
            const DiscreteMeasure cm = compoundPushforward(mu, k);
            const DiscreteMeasure cn = compoundPushforward(nu, k);
            for (double p : {1.0, 2.0}) {
                t.check(wasserstein(cm, cn, p).distance, lk * wasserstein(mu, nu, p).distance + 1e-8,
                        at(trial) + " push-forward k " + std::to_string(k) + " p " + std::to_string(p));
            }
        }
    }
}

std::vector<NormSpec> kyFanAll(std::size_t m) {
    std::vector<NormSpec> out;
    for (std::size_t k = 1; k <= m; ++k) out.push_back(NormSpec::kyFan(k));
    return out;
}

// Curves t -> (H_t, G_t, A_t) for the norm checks of criteria 8 and 10.
struct CurvePoint {
    double t;
    SpdMatrix lower;   // (int X^{-t})^{-1/t}
    SpdMatrix middle;  // G(mu^t)^{1/t}
    SpdMatrix upper;   // (int X^t)^{1/t}
    SpdMatrix g;       // G(mu^t)
};

std::vector<CurvePoint> meanCurves(const DiscreteMeasure& mu, const std::vector<double>& ts) {
    std::vector<CurvePoint> out;
    for (double t : ts) {
        SolverOptions o;
        o.residual_tol *= std::min(1.0, t);
        SpdMatrix g = barycenterPoint(powerMeasure(mu, t), o);
        out.push_back({t, powerMean(mu, -t), powm(g, 1.0 / t), powerMean(mu, t), g});
    }
    return out;
}

// 8. Harmonic <= barycenter <= arithmetic, and the outer norm sandwich on (0, 1].
void agh(Tally& t) {
    const std::vector<double> grid{1.0, 0.5, 0.25, 0.1, 0.01, 0.001};
    for (int trial = 0; trial < 100; ++trial) {
        Rng rng = rngFor(8, trial);
        const DiscreteMeasure mu = randomMeasure(rng, shapeFor(trial));
        const SpdMatrix g = barycenterPoint(mu);
        t.check(-lambdaMin(g.hermitian() - harmonicMean(mu).hermitian()), 1e-8, at(trial) + ": H <= G");
        t.check(-lambdaMin(arithmeticMean(mu).hermitian() - g.hermitian()), 1e-8, at(trial) + ": G <= A");

        const SpdMatrix target = lieTrotterTarget(mu);
        for (const CurvePoint& p : meanCurves(mu, grid)) {
            const std::string tag = at(trial) + " t " + std::to_string(p.t);
            const DiscreteMeasure mu_t = powerMeasure(mu, p.t);
            t.check(-lambdaMin(p.g.hermitian() - harmonicMean(mu_t).hermitian()), 1e-8, tag + ": H(mu^t) <= G(mu^t)");
            t.check(-lambdaMin(arithmeticMean(mu_t).hermitian() - p.g.hermitian()), 1e-8, tag + ": G(mu^t) <= A(mu^t)");
            for (const NormSpec& spec : kyFanAll(mu.dim())) {
                const std::string where = at(trial) + " t " + std::to_string(p.t) + " " + spec.name();
                const double lo = norm(p.lower, spec);
                const double mid = norm(p.middle, spec);
                const double tgt = norm(target, spec);
                const double hi = norm(p.upper, spec);
                t.check(lo - mid, 1e-8, where + ": lower <= middle");
                t.check(mid - tgt, 1e-8, where + ": middle <= target");
                t.check(tgt - hi, 1e-8, where + ": target <= upper");
            }
        }
    }
}

// 9. Lie-Trotter rate and the commuting identity.
void lieTrotter(Tally& t) {
    const std::vector<double> small{1e-1, 1e-2, 1e-3};
    const std::vector<double> grid{2.0, 1.0, 0.5, 0.25, 0.1, 0.01, 0.001};
    for (int trial = 0; trial < 30; ++trial) {
        Rng rng = rngFor(9, trial);
        const MeasureShape s = shapeFor(trial);
        const TrotterCurve c = lieTrotterCurve(randomMeasure(rng, s), small);
        t.check(-logLogSlope(c.ts, c.distances), -0.9, at(trial) + ": slope");
        const TrotterCurve comm = lieTrotterCurve(randomCommutingMeasure(rng, s), grid);
        for (std::size_t i = 0; i < grid.size(); ++i) {
            t.check(comm.distances[i], 1e-9, at(trial) + ": commuting t " + std::to_string(grid[i]));
        }
    }
}

// 10. Norm monotonicity of the three curves and the power-mean Loewner order.
void normMonotonicity(Tally& t) {
    const std::vector<double> grid{2.0, 1.0, 0.5, 0.25, 0.1};
    for (int trial = 0; trial < 100; ++trial) {
        Rng rng = rngFor(10, trial);
        const DiscreteMeasure mu = randomMeasure(rng, shapeFor(trial));
        const std::vector<CurvePoint> curve = meanCurves(mu, grid);
        for (const NormSpec& spec : kyFanAll(mu.dim())) {
            for (std::size_t i = 1; i < curve.size(); ++i) {
                const std::string where = at(trial) + " " + spec.name() + " t " + std::to_string(grid[i]);
                const double mid0 = norm(curve[i - 1].middle, spec), mid1 = norm(curve[i].middle, spec);
                const double lo0 = norm(curve[i - 1].lower, spec), lo1 = norm(curve[i].lower, spec);
                const double hi0 = norm(curve[i - 1].upper, spec), hi1 = norm(curve[i].upper, spec);
                t.check(mid0 - mid1, 1e-9, where + ": middle nondecreasing");
                t.check(lo0 - lo1, 1e-9, where + ": lower nondecreasing");
                t.check(hi1 - hi0, 1e-9, where + ": upper nonincreasing");
            }
        }
        for (const PowerMeanOrderCheck& c : checkPowerMeanOrder(mu, grid, 1e-9)) {
            const std::string where = at(trial) + " t' " + std::to_string(c.t_small);
            t.check(-c.upper_gap, 1e-9, where + ": int X^t' <= (int X^t)^(t'/t)");
            t.check(-c.lower_gap, 1e-9, where + ": negative-power order");
        }
    }
}

// 11. Transport LP against exhaustive matching.
void transportOracle(Tally& t) {
    for (int trial = 0; trial < 50; ++trial) {
        Rng rng = rngFor(11, trial);
        const std::size_t n = 1 + trial % 6;
        const MeasureShape s = shapeFor(trial);
        std::vector<SpdMatrix> xs, ys;
        for (std::size_t i = 0; i < n; ++i) {
            xs.push_back(randomSpd(rng, s.m, s.kappa));
            ys.push_back(randomSpd(rng, s.m, s.kappa));
        }
        const DiscreteMeasure mu = DiscreteMeasure::uniform(xs);
        const DiscreteMeasure nu = DiscreteMeasure::uniform(ys);
        for (double p : {1.0, 2.0}) {
            const double lp = wasserstein(mu, nu, p).distance;
            t.check(std::abs(lp - oracle::permutationWasserstein(xs, ys, p)), 1e-10,
                    at(trial) + " p " + std::to_string(p));
        }
    }
}

// 12. Jacobi eigensolver accuracy.
void eigensolver(Tally& t) {
    for (int trial = 0; trial < 500; ++trial) {
        Rng rng = rngFor(12, trial);
        const std::size_t m = 1 + trial % 8;
        const HermitianMatrix h = randomHermitian(rng, m, std::pow(10.0, rng.uniform(-3.0, 3.0)));
        const EigenSystem e = eigh(h);
        const double scale = h.entries().norm();
        t.check((e.reconstruct() - h.entries()).norm() / scale, 1e-10, at(trial) + ": reconstruction");
        const Matrix gram = e.frame.adjoint() * e.frame;
        t.check((gram - Matrix::Identity(gram.rows(), gram.cols())).norm(), 1e-12, at(trial) + ": orthonormality");
    }
}

}  // namespace

int main() {
    const std::vector<Criterion> criteria{
        {1, "solver soundness", solverSoundness},
        {2, "two-point consistency", twoPoint},
        {3, "contraction", contraction},
        {4, "monotonicity", monotonicity},
        {5, "log-majorization", logMajorization},
        {6, "commuting diagram", commutingDiagram},
        {7, "compound Lipschitz", lipschitz},
        {8, "AGH and outer sandwich", agh},
        {9, "Lie-Trotter", lieTrotter},
        {10, "norm monotonicity", normMonotonicity},
        {11, "transport oracle", transportOracle},
        {12, "eigensolver", eigensolver},
    };

    int failed = 0;
    const auto start = std::chrono::steady_clock::now();
    for (const Criterion& c : criteria) {
        Tally tally;
        const auto t0 = std::chrono::steady_clock::now();
        std::string error;
        try {
            c.run(tally);
        } catch (const std::exception& e) {
            error = e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const bool pass = error.empty() && tally.failures == 0;
        if (!pass) ++failed;
        std::printf("%s %2d %-24s checks=%d failures=%d worst_excess=%.3e time=%.1fs", pass ? "PASS" : "FAIL",
                    c.id, c.name, tally.checks, tally.failures, tally.worst, secs);
        if (!error.empty()) std::printf(" error=\"%s\"", error.c_str());
        if (!tally.first_failure.empty()) std::printf(" first=\"%s\"", tally.first_failure.c_str());
        std::printf("\n");
        std::fflush(stdout);
    }
    const double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%d/%zu criteria passed in %.1fs\n", static_cast<int>(criteria.size()) - failed, criteria.size(),
                total);
    return failed;
}
